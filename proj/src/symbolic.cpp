#include "diff_forge/symbolic.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>

#include "diff_forge/error.hpp"

namespace diff_forge {

std::span<const Gauss> units(UnitGroup group) noexcept {
  static constexpr std::array<Gauss, 4> kUnits = {Gauss{1, 0}, Gauss{-1, 0}, Gauss{0, 1}, Gauss{0, -1}};
  return group == UnitGroup::gaussian ? std::span<const Gauss>(kUnits) : std::span<const Gauss>(kUnits.data(), 2);
}

std::string symbol_name(unsigned symbol) { return symbol == 0 ? "y" : "y" + std::to_string(symbol); }

LinearForm LinearForm::of(unsigned symbol, Gauss coef) {
  LinearForm f;
  if (!coef.is_zero()) f.terms_.push_back({symbol, coef});
  return f;
}

namespace {

std::vector<LinearForm::Term> combine(const std::vector<LinearForm::Term>& a, const std::vector<LinearForm::Term>& b,
                                      bool subtract) {
  std::map<unsigned, Gauss, std::greater<>> acc;
  for (const auto& t : a) acc[t.symbol] = acc[t.symbol] + t.coef;
  for (const auto& t : b) acc[t.symbol] = subtract ? acc[t.symbol] - t.coef : acc[t.symbol] + t.coef;
  std::vector<LinearForm::Term> out;
  for (const auto& [s, c] : acc) {
    if (!c.is_zero()) out.push_back({s, c});
  }
  return out;
}

}  // namespace

LinearForm LinearForm::operator+(const LinearForm& other) const {
  LinearForm f;
  f.terms_ = combine(terms_, other.terms_, false);
  return f;
}

LinearForm LinearForm::operator-(const LinearForm& other) const {
  LinearForm f;
  f.terms_ = combine(terms_, other.terms_, true);
  return f;
}

LinearForm LinearForm::scaled(Gauss unit) const {
  LinearForm f;
  for (const auto& t : terms_) {
    auto c = t.coef * unit;
    if (!c.is_zero()) f.terms_.push_back({t.symbol, c});
  }
  return f;
}

FieldElem LinearForm::evaluate(const FiniteField& field, std::span<const FieldElem> values, unsigned first_symbol,
                               FieldElem xi) const {
  FieldElem acc = 0;
  for (const auto& t : terms_) {
    if (t.symbol < first_symbol || t.symbol - first_symbol >= values.size())
      throw InvalidArgument("no value assigned to " + symbol_name(t.symbol));
    FieldElem c = field.add(field.from_integer(t.coef.re), field.mul(field.from_integer(t.coef.im), xi));
    acc = field.add(acc, field.mul(c, values[t.symbol - first_symbol]));
  }
  return acc;
}

namespace {

std::string coefficient_prefix(Gauss c, bool leading) {
  if (c == Gauss{1, 0}) return leading ? "" : "+";
  if (c == Gauss{-1, 0}) return "-";
  if (c.im == 0) return (c.re > 0 && !leading ? "+" : "") + std::to_string(c.re);
  return leading ? "" : "+";
}

std::string coefficient_suffix(Gauss c) {
  if (c.im == 0) return "";
  if (c == Gauss{0, 1} || c == Gauss{0, -1}) return "xi";
  if (c == Gauss{1, -1}) return "(1-xi)";
  return "(" + std::to_string(c.re) + (c.im >= 0 ? "+" : "") + std::to_string(c.im) + "xi)";
}

}  // namespace

std::string LinearForm::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool leading = true;
  for (const auto& t : terms_) {
    const auto& c = t.coef;
    std::string prefix;
    if (c.im != 0 && c.re == 0) {
      prefix = c.im > 0 ? (leading ? "" : "+") : "-";
    } else {
      prefix = coefficient_prefix(c, leading);
    }
    out += prefix + symbol_name(t.symbol) + coefficient_suffix(c);
    leading = false;
  }
  return out;
}

LinearForm LinearForm::parse(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  auto fail = [&](const std::string& why) -> LinearForm {
    throw InvalidArgument("cannot parse symbolic form '" + std::string(text) + "': " + why);
  };
  if (s.empty() || s == "0") return {};
  LinearForm out;
  std::size_t i = 0;
  while (i < s.size()) {
    std::int64_t sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    std::int64_t mult = 1;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      mult = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) mult = mult * 10 + (s[i++] - '0');
    }
    if (i >= s.size() || s[i] != 'y') return fail("expected a symbol");
    ++i;
    unsigned symbol = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) symbol = symbol * 10 + (s[i++] - '0');
    Gauss factor{1, 0};
    if (s.compare(i, 6, "(1-xi)") == 0) {
      factor = {1, -1};
      i += 6;
    } else if (s.compare(i, 6, "(1+xi)") == 0) {
      factor = {1, 1};
      i += 6;
    } else if (s.compare(i, 2, "xi") == 0) {
      factor = {0, 1};
      i += 2;
    }
    out = out + LinearForm::of(symbol, Gauss{sign * mult, 0} * factor);
  }
  return out;
}

LinearForm normalize(const LinearForm& form, UnitGroup group) {
  if (form.is_zero()) return form;
  const Gauss top = form.terms().front().coef;
  for (auto u : units(group)) {
    Gauss c = top * u;
    const bool canonical = group == UnitGroup::gaussian ? (c.re > 0 && c.im <= 0)
                                                        : (c.re > 0 || (c.re == 0 && c.im > 0));
    if (canonical) return form.scaled(u);
  }
  return form;
}

FormType classify(const LinearForm& f) {
  const auto& t = f.terms();
  if (t.size() == 1) {
    if (t[0].coef == Gauss{2, 0}) return FormType::twice;
    if (t[0].coef == Gauss{1, 0}) return FormType::unit;
    if (t[0].coef == Gauss{1, -1}) return FormType::one_minus_xi;
    return FormType::other;
  }
  if (t.size() == 2 && t[0].coef == Gauss{1, 0}) {
    const auto lo = t[1].coef;
    const bool real_unit = lo == Gauss{1, 0} || lo == Gauss{-1, 0};
    const bool xi_unit = lo == Gauss{0, 1} || lo == Gauss{0, -1};
    if (real_unit) return t[1].symbol == 0 ? FormType::anchored : FormType::sum;
    if (xi_unit && t[1].symbol != 0) return FormType::xi_sum;
  }
  return FormType::other;
}

std::string to_string(FormType type) {
  switch (type) {
    case FormType::twice:
      return "twice";
    case FormType::unit:
      return "unit";
    case FormType::one_minus_xi:
      return "one-minus-xi";
    case FormType::sum:
      return "sum";
    case FormType::xi_sum:
      return "xi-sum";
    case FormType::anchored:
      return "anchored";
    case FormType::other:
      return "other";
  }
  return "other";
}

}  // namespace diff_forge
