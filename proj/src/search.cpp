#include "diff_forge/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

#include "diff_forge/error.hpp"
#include "diff_forge/family.hpp"
#include "diff_forge/number_theory.hpp"

namespace diff_forge {

SearchProblem SearchProblem::make(std::uint64_t p, SchemeVariant variant, const FiniteField& field, std::uint64_t d,
                                  std::uint64_t lambda) {
  auto scheme = build_scheme(p, variant);
  if (d == 0 || lambda == 0) throw InvalidArgument("d and lambda must be positive");
  if (d * lambda != scheme.dh_size())
    throw InvalidArgument("d * lambda = " + std::to_string(d * lambda) + " but every D_h has " +
                          std::to_string(scheme.dh_size()) + " entries");
  const auto q = field.order();
  const auto units = scheme.unit_count();
  if ((q - 1) % units != 0)
    throw InvalidArgument("q - 1 = " + std::to_string(q - 1) + " is not divisible by " + std::to_string(units));
  const auto e = (q - 1) / units;
  if (e % d != 0)
    throw InvalidArgument("d = " + std::to_string(d) + " does not divide e = " + std::to_string(e));
  auto table = symbolic_dh(scheme);
  const FieldElem xi = variant == SchemeVariant::quarter ? field.primitive_fourth_root() : 0;
  return SearchProblem{std::move(scheme), std::move(table), field, d, lambda, xi};
}

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found:
      return "found";
    case SearchStatus::exhausted:
      return "exhausted";
    case SearchStatus::budget_exceeded:
      return "budget-exceeded";
  }
  return "exhausted";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct CompiledEntry {
  std::uint32_t row;
  std::uint32_t terms;
  std::uint32_t index[2];
  FieldElem coef[2];
};

class Searcher {
 public:
  Searcher(const SearchProblem& problem, const SearchOptions& options)
      : pb_(problem), fq_(problem.field), opts_(options), m_(problem.scheme.symbol_count) {
    const auto q = fq_.order();
    if (fq_.has_log_table()) {
      class_of_.resize(q, 0);
      for (FieldElem x = 1; x < q; ++x) class_of_[x] = fq_.cyclo_index(pb_.d, x);
    }
    by_depth_.resize(m_);
    const auto first = pb_.scheme.first_symbol;
    for (std::uint32_t r = 0; r < pb_.table.rows.size(); ++r) {
      for (const auto& form : pb_.table.rows[r].entries) {
        CompiledEntry ce{r, 0, {0, 0}, {0, 0}};
        std::uint32_t depth = 0;
        for (const auto& t : form.terms()) {
          if (ce.terms == 2) throw std::logic_error("D_h entry with more than two symbols");
          const auto idx = t.symbol - first;
          ce.index[ce.terms] = idx;
          ce.coef[ce.terms] = fq_.add(fq_.from_integer(t.coef.re), fq_.mul(fq_.from_integer(t.coef.im), pb_.xi));
          ++ce.terms;
          depth = std::max(depth, idx);
        }
        by_depth_[depth].push_back(ce);
      }
    }
    counters_.assign(pb_.table.rows.size() * pb_.d, 0);
    values_.assign(m_, 0);
  }

  SearchResult run() {
    const auto start = Clock::now();
    SearchResult result;
    const bool done = m_ == 0 || descend(0);
    result.nodes = nodes_;
    if (over_budget_) {
      result.status = SearchStatus::budget_exceeded;
    } else if (done) {
      result.status = SearchStatus::found;
      result.witness = values_;
    } else {
      result.status = SearchStatus::exhausted;
    }
    result.seconds = seconds_since(start);
    return result;
  }

 private:
  unsigned class_of(FieldElem x) const {
    return class_of_.empty() ? fq_.cyclo_index(pb_.d, x) : class_of_[x];
  }

  FieldElem evaluate(const CompiledEntry& ce) const {
    FieldElem acc = 0;
    for (std::uint32_t t = 0; t < ce.terms; ++t) acc = fq_.add(acc, fq_.mul(ce.coef[t], values_[ce.index[t]]));
    return acc;
  }

  // Applies the entries completed at `depth`; on failure undoes what it did.
  bool apply(unsigned depth) {
    const auto& entries = by_depth_[depth];
    std::size_t done = 0;
    bool ok = true;
    classes_.resize(entries.size());
    for (; done < entries.size(); ++done) {
      const auto v = evaluate(entries[done]);
      if (v == 0) {
        ok = false;
        break;
      }
      const auto slot = entries[done].row * pb_.d + class_of(v);
      classes_[done] = slot;
      if (++counters_[slot] > pb_.lambda) {
        ++done;
        ok = false;
        break;
      }
    }
    if (!ok) {
      for (std::size_t i = 0; i < done; ++i) --counters_[classes_[i]];
    } else {
      saved_.insert(saved_.end(), classes_.begin(), classes_.begin() + static_cast<std::ptrdiff_t>(done));
    }
    return ok;
  }

  void undo(unsigned depth) {
    const auto n = by_depth_[depth].size();
    for (std::size_t i = 0; i < n; ++i) {
      --counters_[saved_.back()];
      saved_.pop_back();
    }
  }

  bool descend(unsigned depth) {
    const FieldElem last = (depth == 0 && opts_.normalize) ? 1 : fq_.order() - 1;
    for (FieldElem v = 1; v <= last; ++v) {
      if (opts_.budget && nodes_ >= *opts_.budget) {
        over_budget_ = true;
        return false;
      }
      ++nodes_;
      values_[depth] = v;
      if (!apply(depth)) continue;
      if (depth + 1 == m_ || descend(depth + 1)) return true;
      undo(depth);
      if (over_budget_) return false;
    }
    return false;
  }

  const SearchProblem& pb_;
  const FiniteField& fq_;
  SearchOptions opts_;
  unsigned m_;
  std::vector<unsigned> class_of_;
  std::vector<std::vector<CompiledEntry>> by_depth_;
  std::vector<std::uint32_t> counters_;
  std::vector<FieldElem> values_;
  std::vector<std::uint64_t> classes_;
  std::vector<std::uint64_t> saved_;
  std::uint64_t nodes_ = 0;
  bool over_budget_ = false;
};

void check_certificate(const SearchProblem& problem, SearchResult& result) {
  auto cert = certify(problem, result.witness);
  if (!cert.ok()) throw std::logic_error("search produced a witness that does not certify: " + cert.detail);
  result.detail = "certified";
}

}  // namespace

SearchResult search(const SearchProblem& problem, const SearchOptions& options) {
  Searcher s(problem, options);
  auto result = s.run();
  if (result.status == SearchStatus::found && options.certify) check_certificate(problem, result);
  return result;
}

LiftInput lift_input(const SearchProblem& problem, const std::vector<FieldElem>& witness) {
  const auto& scheme = problem.scheme;
  auto pairs = assemble_block(scheme, problem.field, witness, problem.xi);
  Block f;
  std::vector<FieldElem> phi;
  for (auto [a, b] : pairs) {
    f.push_back({a});
    phi.push_back(b);
  }
  return LiftInput{AbelianGroup::field_additive(scheme.field), problem.field, problem.e(), problem.d, problem.lambda,
                   {std::move(f)}, {std::move(phi)}};
}

Certificate certify(const SearchProblem& problem, const std::vector<FieldElem>& witness) {
  Certificate c;
  try {
    const auto values = evaluate_dh(problem.table, problem.scheme, problem.field, witness, problem.xi);
    c.transversal = true;
    for (std::size_t r = 0; r < values.size(); ++r) {
      if (!transversal_check(values[r], problem.field, problem.d, problem.lambda)) {
        c.transversal = false;
        c.detail = "D_" + problem.scheme.field.format(problem.table.rows[r].h) + " is not a transversal";
        break;
      }
    }
  } catch (const InvalidArgument& e) {
    c.detail = e.what();
    return c;
  }
  try {
    const auto df = lift(lift_input(problem, witness));
    const auto report = verify_df(df);
    c.df = report.ok;
    if (!report.ok && c.detail.empty()) c.detail = "lifted family fails verify_df";
  } catch (const LiftError& e) {
    if (c.detail.empty()) c.detail = e.what();
  }
  return c;
}

std::optional<FieldElem> find_constrained_element(const FiniteField& field, std::uint64_t d,
                                                  const std::vector<CycloConstraint>& constraints,
                                                  const std::vector<FieldElem>& exclude) {
  if (d == 0 || (field.order() - 1) % d != 0)
    throw InvalidArgument("d = " + std::to_string(d) + " does not divide q - 1");
  for (const auto& c : constraints) {
    if (c.cls >= d) throw InvalidArgument("class label " + std::to_string(c.cls) + " out of range");
    if (!field.contains(c.base)) throw InvalidArgument("constraint base outside " + field.describe());
  }
  for (FieldElem x = 0; x < field.order(); ++x) {
    if (std::find(exclude.begin(), exclude.end(), x) != exclude.end()) continue;
    bool ok = true;
    for (const auto& c : constraints) {
      const auto diff = field.sub(x, c.base);
      if (diff == 0 || field.cyclo_index(d, diff) != c.cls) {
        ok = false;
        break;
      }
    }
    if (ok) return x;
  }
  return std::nullopt;
}

namespace {

Condition condition(const char* form, std::initializer_list<unsigned> cls) { return {LinearForm::parse(form), cls}; }

}  // namespace

std::optional<ConditionTable> reference_condition_table(std::uint64_t p) {
  if (p == 13) {
    return ConditionTable{
        condition("y1", {0, 0, 0}),      condition("y2", {1, 1, 1}),      condition("y2-y1", {0, 0, 0}),
        condition("y2+y1", {1, 1, 1}),   condition("y2-y1xi", {0, 0, 1}), condition("y2+y1xi", {2, 1, 2}),
        condition("y3", {2, 2, 2}),      condition("y3-y1", {1, 0, 0}),   condition("y3+y1", {2, 2, 1}),
        condition("y3-y2", {1, 1, 1}),   condition("y3+y2", {2, 2, 2}),   condition("y3-y1xi", {0, 0, 0}),
        condition("y3+y1xi", {2, 2, 2}), condition("y3-y2xi", {0, 1, 0}), condition("y3+y2xi", {1, 2, 2}),
    };
  }
  if (p == 17) {
    return ConditionTable{
        condition("y1", {0, 0, 0, 1}),      condition("y2", {1, 1, 1, 0}),      condition("y2-y1", {0, 0, 2, 1}),
        condition("y2+y1", {3, 2, 3, 3}),   condition("y2-y1xi", {0, 0, 0, 0}), condition("y2+y1xi", {1, 1, 1, 1}),
        condition("y3", {2, 2, 2, 3}),      condition("y3-y1", {0, 0, 0, 0}),   condition("y3+y1", {1, 1, 1, 1}),
        condition("y3-y2", {0, 1, 0, 0}),   condition("y3+y2", {1, 3, 3, 2}),   condition("y3-y1xi", {0, 0, 0, 0}),
        condition("y3+y1xi", {1, 1, 1, 1}), condition("y3-y2xi", {2, 2, 2, 2}), condition("y3+y2xi", {3, 3, 3, 3}),
        condition("y4", {3, 3, 3, 2}),      condition("y4-y1", {2, 2, 2, 2}),   condition("y4+y1", {3, 3, 3, 3}),
        condition("y4-y2", {0, 0, 0, 0}),   condition("y4+y2", {1, 1, 1, 1}),   condition("y4-y3", {1, 0, 0, 1}),
        condition("y4+y3", {2, 2, 1, 3}),   condition("y4-y1xi", {2, 1, 1, 0}), condition("y4+y1xi", {3, 3, 2, 2}),
        condition("y4-y2xi", {2, 2, 2, 2}), condition("y4+y2xi", {3, 3, 3, 3}), condition("y4-y3xi", {2, 2, 2, 2}),
        condition("y4+y3xi", {3, 3, 3, 3}),
    };
  }
  return std::nullopt;
}

SearchResult greedy_lift_search(const SearchProblem& problem, const ConditionTable& table,
                                const SearchOptions& options) {
  const auto start = Clock::now();
  const auto& fq = problem.field;
  const auto& scheme = problem.scheme;
  const auto first = scheme.first_symbol;
  const unsigned column = problem.xi == 0 ? 0 : fq.cyclo_index(problem.d, fq.sub(1, problem.xi));

  std::vector<std::vector<const Condition*>> by_symbol(scheme.symbol_count);
  for (const auto& c : table) {
    const auto& t = c.form.terms();
    if (t.empty() || t.size() > 2 || !(t[0].coef == Gauss{1, 0}) || t[0].symbol < first ||
        t[0].symbol - first >= scheme.symbol_count)
      throw InvalidArgument("unsupported condition " + c.form.to_string());
    if (column >= c.cls.size() || c.cls[column] >= problem.d)
      throw InvalidArgument("condition " + c.form.to_string() + " has no valid class for column " +
                            std::to_string(column));
    by_symbol[t[0].symbol - first].push_back(&c);
  }

  SearchResult result;
  std::vector<FieldElem> values(scheme.symbol_count, 0);
  for (unsigned j = 0; j < scheme.symbol_count; ++j) {
    std::vector<CycloConstraint> constraints;
    for (const auto* c : by_symbol[j]) {
      FieldElem base = 0;
      if (c->form.terms().size() == 2) {
        const auto& lo = c->form.terms()[1];
        const auto coef = fq.add(fq.from_integer(lo.coef.re), fq.mul(fq.from_integer(lo.coef.im), problem.xi));
        base = fq.neg(fq.mul(coef, values[lo.symbol - first]));
      }
      constraints.push_back({base, c->cls[column]});
    }
    ++result.nodes;
    auto x = find_constrained_element(fq, problem.d, constraints, {0});
    if (!x) {
      result.status = SearchStatus::exhausted;
      result.detail = "no admissible value for " + symbol_name(first + j) + " in column " + std::to_string(column);
      result.seconds = seconds_since(start);
      return result;
    }
    values[j] = *x;
  }

  const auto evaluated = evaluate_dh(problem.table, scheme, fq, values, problem.xi);
  for (std::size_t r = 0; r < evaluated.size(); ++r) {
    if (!transversal_check(evaluated[r], fq, problem.d, problem.lambda)) {
      result.status = SearchStatus::exhausted;
      result.detail = "table assignment fails at D_" + scheme.field.format(problem.table.rows[r].h);
      result.witness = values;
      result.seconds = seconds_since(start);
      return result;
    }
  }
  result.status = SearchStatus::found;
  result.witness = values;
  if (options.certify) check_certificate(problem, result);
  result.seconds = seconds_since(start);
  return result;
}

std::vector<ScanRecord> scan_range(std::uint64_t p, SchemeVariant variant, std::uint64_t d, std::uint64_t lambda,
                                   std::uint64_t q_from, std::uint64_t q_to, const ScanOptions& options) {
  const auto scheme = build_scheme(p, variant);
  if (d * lambda != scheme.dh_size())
    throw InvalidArgument("d * lambda must equal |D_h| = " + std::to_string(scheme.dh_size()));
  const auto units = scheme.unit_count();
  std::vector<std::uint64_t> qs;
  for (std::uint64_t q = std::max<std::uint64_t>(q_from, 2); q <= q_to; ++q) {
    if ((q - 1) % units != 0 || ((q - 1) / units) % d != 0) continue;
    if (options.primes_only ? !is_prime(q) : !as_prime_power(q)) continue;
    qs.push_back(q);
  }

  std::vector<ScanRecord> records(qs.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (;;) {
      const auto i = next.fetch_add(1);
      if (i >= qs.size()) return;
      try {
        const auto problem = SearchProblem::make(p, variant, FiniteField::of_order(qs[i]), d, lambda);
        records[i] = {qs[i], search(problem, options.search)};
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(qs.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);
  return records;
}

}  // namespace diff_forge
