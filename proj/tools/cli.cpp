#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "diff_forge/bound.hpp"
#include "diff_forge/catalog.hpp"
#include "diff_forge/design.hpp"
#include "diff_forge/error.hpp"
#include "diff_forge/lifting.hpp"
#include "diff_forge/paley.hpp"
#include "diff_forge/search.hpp"
#include "diff_forge/serialize.hpp"

namespace diff_forge {

namespace {

struct Io {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  bool human = false;
  unsigned jobs = 1;
};

// Opened input: either a file or the caller's stdin.
class Input {
 public:
  Input(const std::string& path, std::istream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ifstream>(path);
      if (!*file_) throw SchemaError(path, "cannot open file");
      stream_ = file_.get();
    }
  }
  std::istream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ifstream> file_;
  std::istream* stream_ = nullptr;
};

void print_human(const Json& j, std::ostream& out, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object() || (value.is_array() && !value.empty() && value.front().is_structured())) {
        out << pad << key << ":\n";
        print_human(value, out, indent + 2);
      } else {
        out << pad << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
      }
    }
  } else if (j.is_array()) {
    for (const auto& value : j) {
      if (value.is_structured() && !value.is_array()) {
        print_human(value, out, indent);
        out << '\n';
      } else {
        out << pad << value.dump() << '\n';
      }
    }
  } else {
    out << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

void emit(const Io& io, const Json& j) {
  if (io.human) {
    print_human(j, io.out);
  } else {
    io.out << j.dump() << '\n';
  }
}

int fail(const Io& io, const std::string& message) {
  emit(io, Json{{"ok", false}, {"error", message}});
  return kFailed;
}

int verify_sdf_cmd(Io& io, const std::string& path) {
  Input input(path, io.in);
  const auto sdf = sdf_from_json(parse_json(input.get()));
  const auto report = verify_sdf(sdf);
  emit(io, sdf_report_to_json(report, sdf));
  return report.ok ? kOk : kFailed;
}

int verify_df_cmd(Io& io, const std::string& path) {
  Input input(path, io.in);
  const auto j = parse_json(input.get());
  std::optional<RelativeDifferenceFamily> df;
  try {
    df.emplace(df_from_json(j));
  } catch (const InvalidArgument& e) {
    return fail(io, e.what());
  }
  const auto report = verify_df(*df);
  emit(io, df_report_to_json(report, *df));
  return report.ok ? kOk : kFailed;
}

int verify_design_cmd(Io& io, const std::string& path) {
  Input input(path, io.in);
  const auto design = read_design(input.get());
  const auto report = verify_design(design);
  auto j = design_report_to_json(report);
  j["v"] = design.v;
  j["k"] = design.k;
  j["lambda"] = design.lambda;
  j["blocks"] = design.blocks.size();
  emit(io, j);
  return report.ok ? kOk : kFailed;
}

Json dh_report(const LiftInput& input) {
  const auto analysis = compute_dh(input);
  Json rows = Json::array();
  for (const auto& row : analysis.rows) {
    Json d = Json::array();
    for (auto x : row.d) d.push_back(field_element_to_json(input.field, x));
    Json r{{"h", element_to_json(input.group, row.h)}, {"factored", row.factored}, {"D_h", d}};
    if (row.factored) {
      r["class_counts"] = class_counts(row.d, input.field, input.d);
      r["transversal"] = transversal_check(row.d, input.field, input.d, input.lambda);
    } else {
      r["failure"] = row.failure;
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

int lift_cmd(Io& io, const std::string& path, bool report_only) {
  Input input(path, io.in);
  const auto li = lift_input_from_json(parse_json(input.get()));
  if (report_only) {
    emit(io, Json{{"mu_required", li.required_mu()}, {"rows", dh_report(li)}});
    return kOk;
  }
  try {
    emit(io, df_to_json(lift(li)));
  } catch (const LiftError& e) {
    return fail(io, e.what());
  }
  return kOk;
}

int bound_cmd(Io& io, unsigned d, unsigned m) {
  emit(io, bound_to_json(q_bound(d, m)));
  return kOk;
}

PaleyType paley_type(const std::string& s) {
  if (s == "first") return PaleyType::first;
  if (s == "second") return PaleyType::second;
  throw InvalidArgument("type must be first or second, got '" + s + "'");
}

int paley_cmd(Io& io, std::uint64_t p, const std::string& type, const std::string& scheme_name) {
  if (!scheme_name.empty()) {
    const auto scheme = build_scheme(p, scheme_variant_from_string(scheme_name));
    auto j = dh_table_to_json(symbolic_dh(scheme), scheme);
    Json f = Json::array();
    for (auto x : scheme.f) f.push_back(scheme.field.format(x));
    Json phi = Json::array();
    for (const auto& form : scheme.phi) phi.push_back(form.to_string());
    j["delta"] = scheme.delta;
    j["f"] = f;
    j["phi"] = phi;
    emit(io, j);
    return kOk;
  }
  emit(io, sdf_to_json(paley_sdf(p, paley_type(type))));
  return kOk;
}

struct SearchArgs {
  std::string problem_path;
  std::uint64_t p = 13;
  std::string variant = "quarter";
  std::uint64_t q = 0;
  std::uint64_t d = 0;
  std::uint64_t lambda = 1;
  std::optional<std::uint64_t> budget;
  bool no_normalize = false;
  bool greedy = false;
  std::string emit = "result";
};

int search_cmd(Io& io, const SearchArgs& a) {
  SearchProblem problem = [&] {
    if (!a.problem_path.empty()) {
      Input input(a.problem_path, io.in);
      return problem_from_json(parse_json(input.get()));
    }
    if (a.q == 0 || a.d == 0) throw InvalidArgument("search needs --q and --d (or --problem)");
    return SearchProblem::make(a.p, scheme_variant_from_string(a.variant), FiniteField::of_order(a.q), a.d, a.lambda);
  }();
  SearchOptions options;
  options.budget = a.budget;
  options.normalize = !a.no_normalize;
  SearchResult result;
  if (a.greedy) {
    auto table = reference_condition_table(problem.scheme.p);
    if (!table || problem.scheme.variant != SchemeVariant::quarter || problem.lambda != 1)
      throw InvalidArgument("no condition table for this problem (only quarter p = 13, 17 with lambda = 1)");
    result = greedy_lift_search(problem, *table, options);
  } else {
    result = search(problem, options);
  }
  if (a.emit == "df" && result.status == SearchStatus::found) {
    emit(io, df_to_json(lift(lift_input(problem, result.witness))));
  } else if (a.emit == "lift-input" && result.status == SearchStatus::found) {
    emit(io, lift_input_to_json(lift_input(problem, result.witness)));
  } else {
    auto j = problem_to_json(problem);
    j.erase("field");
    const auto r = search_result_to_json(problem, result);
    for (const auto& [k, v] : r.items()) j[k] = v;
    emit(io, j);
  }
  return result.status == SearchStatus::found ? kOk : kFailed;
}

struct ScanArgs {
  std::uint64_t p = 13;
  std::string variant = "quarter";
  std::uint64_t d = 0;
  std::uint64_t lambda = 1;
  std::uint64_t from = 0;
  std::uint64_t to = 0;
  std::optional<std::uint64_t> budget;
  bool prime_powers = false;
};

int scan_cmd(Io& io, const ScanArgs& a) {
  if (a.d == 0) throw InvalidArgument("scan needs --d");
  ScanOptions options;
  options.search.budget = a.budget;
  options.primes_only = !a.prime_powers;
  options.jobs = io.jobs;
  const auto variant = scheme_variant_from_string(a.variant);
  const auto records = scan_range(a.p, variant, a.d, a.lambda, a.from, a.to, options);
  std::vector<std::uint64_t> exhausted;
  for (const auto& r : records) {
    const auto problem = SearchProblem::make(a.p, variant, FiniteField::of_order(r.q), a.d, a.lambda);
    Json j{{"q", r.q}};
    const auto res = search_result_to_json(problem, r.result);
    for (const auto& [k, v] : res.items()) j[k] = v;
    if (io.human) {
      io.out << "q=" << r.q << "  " << to_string(r.result.status) << "  nodes=" << r.result.nodes << '\n';
    } else {
      io.out << j.dump() << '\n';
    }
    if (r.result.status == SearchStatus::exhausted) exhausted.push_back(r.q);
  }
  if (io.human) {
    io.out << "exhausted:";
    for (auto q : exhausted) io.out << ' ' << q;
    io.out << '\n';
  }
  return kOk;
}

Design load_ingredient(const std::string& spec, std::istream& in) {
  auto number = [&](const std::string& s) -> std::uint64_t {
    try {
      std::size_t used = 0;
      auto v = std::stoull(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw InvalidArgument("bad number '" + s + "' in ingredient '" + spec + "'");
  };
  if (spec.starts_with("affine:")) return affine_plane(FiniteField::of_order(number(spec.substr(7))));
  if (spec.starts_with("trivial:")) {
    auto rest = spec.substr(8);
    std::uint64_t lambda = 1;
    if (auto colon = rest.find(':'); colon != std::string::npos) {
      lambda = number(rest.substr(colon + 1));
      rest = rest.substr(0, colon);
    }
    return trivial_design(static_cast<std::uint32_t>(number(rest)), lambda);
  }
  Input input(spec, in);
  return read_design(input.get());
}

struct ComposeArgs {
  std::string df_path;
  std::string ingredient;
  int variant = 1;
  unsigned copies = 1;
  std::string output;
  std::string format = "jsonl";
};

int compose_cmd(Io& io, const ComposeArgs& a) {
  if (a.variant != 1 && a.variant != 2) throw InvalidArgument("--variant must be 1 or 2");
  if (a.copies == 0) throw InvalidArgument("--copies must be positive");
  std::optional<RelativeDifferenceFamily> df;
  {
    Input input(a.df_path, io.in);
    df.emplace(df_from_json(parse_json(input.get())));
  }
  if (a.copies > 1) df.emplace(repeat(*df, a.copies));
  const auto ingredient = load_ingredient(a.ingredient, io.in);
  const auto design =
      compose_design(*df, ingredient, a.variant == 1 ? CompositionVariant::on_cosets : CompositionVariant::on_cosets_plus_infinity);
  const auto report = verify_design(design);

  auto write = [&](std::ostream& os) {
    if (a.format == "json") {
      os << design_to_json(design).dump() << '\n';
    } else {
      write_design_jsonl(os, design);
    }
  };
  auto summary = design_report_to_json(report);
  summary["v"] = design.v;
  summary["k"] = design.k;
  summary["lambda"] = design.lambda;
  summary["blocks"] = design.blocks.size();
  if (a.output.empty()) {
    write(io.out);
    io.err << summary.dump() << '\n';
  } else {
    std::ofstream os(a.output);
    if (!os) throw SchemaError(a.output, "cannot open file for writing");
    write(os);
    emit(io, summary);
  }
  return report.ok ? kOk : kFailed;
}

struct CatalogArgs {
  std::string lemma;
  std::string emit;
  bool doubled = false;
};

int catalog_list(Io& io) {
  Json sdfs = Json::array();
  for (const auto& e : sdf_catalog()) {
    const auto r = verify_sdf(e.sdf);
    sdfs.push_back(Json{{"tag", e.tag},
                        {"group", e.sdf.group().describe()},
                        {"k", e.sdf.k()},
                        {"mu", e.sdf.mu()},
                        {"blocks", e.sdf.blocks().size()},
                        {"ok", r.ok}});
  }
  Json lifts = Json::array();
  for (const auto& e : lift_catalog()) {
    lifts.push_back(Json{{"tag", e.tag},
                         {"df", {e.expected.v, e.expected.n, e.expected.k, e.expected.lambda}},
                         {"field", e.input.field.describe()},
                         {"e", e.input.e},
                         {"d", e.input.d},
                         {"lambda", e.input.lambda}});
  }
  emit(io, Json{{"sdf", sdfs}, {"lift", lifts}});
  return kOk;
}

Json lift_summary(const LiftEntry& e) {
  Json j{{"tag", e.tag}};
  const auto sdf_report = verify_sdf(e.input.sdf());
  j["sdf_ok"] = sdf_report.ok;
  j["mu_required"] = e.input.required_mu();
  try {
    const auto df = lift(e.input);
    const auto r = verify_df(df);
    j["df"] = {df.group().order(), df.subgroup().order(), df.k(), df.lambda()};
    j["blocks"] = df.blocks().size();
    j["df_ok"] = r.ok;
    j["matches_expected"] = df.group().order() == e.expected.v && df.subgroup().order() == e.expected.n &&
                            df.k() == e.expected.k && df.lambda() == e.expected.lambda;
  } catch (const LiftError& ex) {
    j["df_ok"] = false;
    j["error"] = ex.what();
  }
  return j;
}

int catalog_cmd(Io& io, const CatalogArgs& a) {
  if (a.lemma.empty()) {
    if (!a.emit.empty()) throw InvalidArgument("--emit needs --lemma");
    return catalog_list(io);
  }
  const auto sdfs = find_sdf(a.lemma);
  const auto lifts = find_lift(a.lemma);
  if (sdfs.empty() && lifts.empty()) throw InvalidArgument("no catalog entry matches '" + a.lemma + "'");

  if (a.emit.empty()) {
    Json out = Json::array();
    bool ok = true;
    for (const auto* e : sdfs) {
      const auto r = verify_sdf(e->sdf);
      ok = ok && r.ok;
      auto j = sdf_report_to_json(r, e->sdf);
      j["tag"] = e->tag;
      out.push_back(j);
    }
    for (const auto* e : lifts) {
      auto j = lift_summary(*e);
      ok = ok && j["sdf_ok"].get<bool>() && j["df_ok"].get<bool>();
      out.push_back(j);
    }
    emit(io, out);
    return ok ? kOk : kFailed;
  }

  auto single_lift = [&]() -> const LiftEntry& {
    if (lifts.size() != 1) {
      std::string tags;
      for (const auto* e : lifts) tags += " " + e->tag;
      throw InvalidArgument("--emit " + a.emit + " needs exactly one lift entry; '" + a.lemma + "' matches" +
                            (tags.empty() ? " none" : tags));
    }
    return *lifts.front();
  };

  if (a.emit == "sdf") {
    if (sdfs.size() == 1) {
      emit(io, sdf_to_json(sdfs.front()->sdf));
    } else {
      emit(io, sdf_to_json(single_lift().input.sdf()));
    }
    return kOk;
  }
  if (a.emit == "lift-input") {
    emit(io, lift_input_to_json(single_lift().input));
    return kOk;
  }
  if (a.emit == "dh") {
    const auto& e = single_lift();
    emit(io, Json{{"tag", e.tag}, {"mu_required", e.input.required_mu()}, {"rows", dh_report(e.input)}});
    return kOk;
  }
  if (a.emit == "df") {
    const auto& e = single_lift();
    auto df = lift(e.input);
    if (a.doubled) df = double_lambda(df);
    emit(io, df_to_json(df));
    return kOk;
  }
  throw InvalidArgument("--emit must be sdf, lift-input, dh or df");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Io io{in, out, err};
  CLI::App app{"Construct and verify difference families and 2-designs", "diff-forge"};
  app.require_subcommand(1);
  app.add_flag("--human", io.human, "Print tables instead of JSON");
  app.add_option("--jobs", io.jobs, "Worker threads for scans")->check(CLI::PositiveNumber);

  std::string path;
  auto* vsdf = app.add_subcommand("verify-sdf", "Verify a strong difference family");
  vsdf->add_option("file", path, "SDF JSON (default stdin)");
  auto* vdf = app.add_subcommand("verify-df", "Verify a relative difference family");
  vdf->add_option("file", path, "DF JSON (default stdin)");
  auto* vdes = app.add_subcommand("verify-design", "Verify a 2-design");
  vdes->add_option("file", path, "design JSON or JSON Lines (default stdin)");

  bool report_only = false;
  auto* lift_app = app.add_subcommand("lift", "Lift an ordered SDF with companion blocks to a DF");
  lift_app->add_option("file", path, "lift-input JSON (default stdin)");
  lift_app->add_flag("--report", report_only, "Print the D_h factorization instead of the DF");

  unsigned bd = 0, bm = 0;
  auto* bound_app = app.add_subcommand("bound", "Evaluate Q(d, m)");
  bound_app->add_option("--d", bd, "index d")->required()->check(CLI::PositiveNumber);
  bound_app->add_option("--m", bm, "number of conditions m")->required()->check(CLI::PositiveNumber);

  std::uint64_t pp = 0;
  std::string ptype = "first", pscheme;
  auto* paley_app = app.add_subcommand("paley", "Paley difference multisets and lifting schemes");
  paley_app->add_option("--p", pp, "odd prime power")->required();
  paley_app->add_option("--type", ptype, "first or second");
  paley_app->add_option("--scheme", pscheme, "quarter, half-first or half-second: print the symbolic D_h table");

  SearchArgs sa;
  auto* search_app = app.add_subcommand("search", "Search symbol values for a Paley lifting scheme");
  search_app->add_option("--problem", sa.problem_path, "problem JSON");
  search_app->add_option("--p", sa.p, "Paley prime power");
  search_app->add_option("--variant", sa.variant, "quarter, half-first or half-second");
  search_app->add_option("--q", sa.q, "field order");
  search_app->add_option("--d", sa.d, "cyclotomic index d");
  search_app->add_option("--lambda", sa.lambda, "transversal multiplicity");
  search_app->add_option("--budget", sa.budget, "node budget");
  search_app->add_flag("--no-normalize", sa.no_normalize, "Do not fix the first symbol to 1");
  search_app->add_flag("--greedy", sa.greedy, "Use the reference condition table instead of backtracking");
  search_app->add_option("--emit", sa.emit, "result, lift-input or df")
      ->check(CLI::IsMember({"result", "lift-input", "df"}));

  ScanArgs sc;
  auto* scan_app = app.add_subcommand("scan", "Search every admissible q in a range");
  scan_app->add_option("--p", sc.p, "Paley prime power");
  scan_app->add_option("--variant", sc.variant, "quarter, half-first or half-second");
  scan_app->add_option("--d", sc.d, "cyclotomic index d")->required();
  scan_app->add_option("--lambda", sc.lambda, "transversal multiplicity");
  scan_app->add_option("--from", sc.from, "smallest q")->required();
  scan_app->add_option("--to", sc.to, "largest q")->required();
  scan_app->add_option("--budget", sc.budget, "node budget per q");
  scan_app->add_flag("--prime-powers", sc.prime_powers, "Include prime powers, not just primes");

  ComposeArgs ca;
  auto* compose_app = app.add_subcommand("compose", "Build a 2-design from a DF and an ingredient design");
  compose_app->add_option("--df", ca.df_path, "DF JSON (- for stdin)")->required();
  compose_app->add_option("--ingredient", ca.ingredient, "design file, affine:Q or trivial:N[:LAMBDA]")->required();
  compose_app->add_option("--variant", ca.variant, "1: cosets, 2: cosets plus a point at infinity");
  compose_app->add_option("--copies", ca.copies, "use this many copies of the DF");
  compose_app->add_option("--output", ca.output, "write the design here and print the report");
  compose_app->add_option("--format", ca.format, "jsonl or json")->check(CLI::IsMember({"jsonl", "json"}));

  CatalogArgs cat;
  auto* catalog_app = app.add_subcommand("catalog", "Built-in constructions");
  catalog_app->add_option("--lemma", cat.lemma, "entry tag, e.g. 2.3 or lemma-2.16-p81");
  catalog_app->add_option("--emit", cat.emit, "sdf, lift-input, dh or df");
  catalog_app->add_flag("--double", cat.doubled, "with --emit df: two copies, lambda doubled");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kMalformed;
  }

  try {
    if (*vsdf) return verify_sdf_cmd(io, path);
    if (*vdf) return verify_df_cmd(io, path);
    if (*vdes) return verify_design_cmd(io, path);
    if (*lift_app) return lift_cmd(io, path, report_only);
    if (*bound_app) return bound_cmd(io, bd, bm);
    if (*paley_app) return paley_cmd(io, pp, ptype, pscheme);
    if (*search_app) return search_cmd(io, sa);
    if (*scan_app) return scan_cmd(io, sc);
    if (*compose_app) return compose_cmd(io, ca);
    if (*catalog_app) return catalog_cmd(io, cat);
  } catch (const SchemaError& e) {
    err << "diff-forge: malformed input: " << e.what() << '\n';
    return kMalformed;
  } catch (const InvalidArgument& e) {
    err << "diff-forge: " << e.what() << '\n';
    return kMalformed;
  }
  return kMalformed;
}

}  // namespace diff_forge
