#ifndef PERMBIN_IO_HPP
#define PERMBIN_IO_HPP

// JSON and CSV serialization. Field elements are written as strings in the
// element text format so that extension-field values stay readable.

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "permbin/bounds.hpp"
#include "permbin/descent.hpp"
#include "permbin/equivalence.hpp"
#include "permbin/permtest.hpp"

namespace permbin::io {

using json = nlohmann::ordered_json;

namespace detail {

inline json elements(const FieldCtx& ctx, const std::vector<FieldElement>& xs) {
  json arr = json::array();
  for (auto x : xs) arr.push_back(format_element(ctx, x));
  return arr;
}

inline std::vector<FieldElement> parse_elements(const FieldCtx& ctx, const json& arr) {
  std::vector<FieldElement> out;
  for (const auto& s : arr) out.push_back(parse_element(ctx, s.get<std::string>()));
  return out;
}

inline Method parse_method(std::string_view s) {
  if (s == "brute") return Method::Brute;
  if (s == "hd") return Method::HermiteDickson;
  if (s == "criterion") return Method::Criterion;
  throw Error(ErrorKind::ParseError, "unknown method '" + std::string(s) + "'");
}

template <class T>
T get(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing field '") + key + "'");
  return j.at(key).get<T>();
}

}  // namespace detail

// ---- Verdicts ---------------------------------------------------------------

inline json witness_to_json(const FieldCtx& ctx, const Witness& w) {
  return std::visit(
      [&](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Clean>) {
          return {{"kind", "clean"}};
        } else if constexpr (std::is_same_v<T, CollisionPair>) {
          return {{"kind", "collision"}, {"x1", format_element(ctx, x.x1)}, {"x2", format_element(ctx, x.x2)}};
        } else if constexpr (std::is_same_v<T, ExtraRoots>) {
          return {{"kind", "extra_roots"}, {"roots", detail::elements(ctx, x.roots)}};
        } else {
          return {{"kind", "failing_exponent"}, {"l", x.l}, {"degree", x.degree}};
        }
      },
      w);
}

inline Witness witness_from_json(const FieldCtx& ctx, const json& j) {
  const auto kind = detail::get<std::string>(j, "kind");
  if (kind == "clean") return Clean{};
  if (kind == "collision")
    return CollisionPair{parse_element(ctx, detail::get<std::string>(j, "x1")),
                         parse_element(ctx, detail::get<std::string>(j, "x2"))};
  if (kind == "extra_roots") return ExtraRoots{detail::parse_elements(ctx, j.at("roots"))};
  if (kind == "failing_exponent") return FailingExponent{detail::get<u64>(j, "l"), detail::get<u64>(j, "degree")};
  throw Error(ErrorKind::ParseError, "unknown witness kind '" + kind + "'");
}

inline json to_json(const FieldCtx& ctx, const PermVerdict& v) {
  return {{"is_perm", v.is_perm},
          {"method", std::string(to_string(v.method))},
          {"witness", witness_to_json(ctx, v.witness)},
          {"checked_l", v.checked_l}};
}

inline PermVerdict verdict_from_json(const FieldCtx& ctx, const json& j) {
  PermVerdict v;
  v.is_perm = detail::get<bool>(j, "is_perm");
  v.method = detail::parse_method(detail::get<std::string>(j, "method"));
  v.witness = witness_from_json(ctx, j.at("witness"));
  v.checked_l = detail::get<std::vector<u64>>(j, "checked_l");
  return v;
}

// ---- Binomials and classes -------------------------------------------------

inline json to_json(const Binomial& f) {
  return {{"a", format_element(f.ctx(), f.a())}, {"n", f.n()}, {"m", f.m()}, {"d", f.d()}};
}

inline Binomial binomial_from_json(const FieldCtx& ctx, const json& j) {
  const Binomial f = make_binomial(ctx, parse_element(ctx, detail::get<std::string>(j, "a")), detail::get<u64>(j, "n"),
                                   detail::get<u64>(j, "m"));
  if (j.contains("d") && j.at("d").get<u64>() != f.d()) throw Error(ErrorKind::ParseError, "stored d does not match");
  return f;
}

inline json to_json(const DClass& c, bool is_perm) {
  const auto& ctx = c.base.ctx();
  return {{"class_id", format_element(ctx, c.class_id)},
          {"members", detail::elements(ctx, c.members)},
          {"size", c.size()},
          {"is_perm", is_perm}};
}

// ---- Descent ---------------------------------------------------------------

inline json to_json(const FieldCtx& ctx, const ReducedForm& rf) {
  json j;
  if (rf.kind == ReducedForm::Kind::Monomial) {
    j = {{"kind", "monomial"}, {"coeff", format_element(ctx, rf.coeff)}, {"k", rf.k}};
  } else {
    j = {{"kind", "binomial"},  {"coeff", format_element(ctx, rf.coeff)}, {"n1", rf.n1},
         {"m1", rf.m1},         {"inner_gcd", rf.inner_gcd},               {"inner_n", rf.inner_n},
         {"inner_m", rf.inner_m}};
  }
  j["permutes_subfield"] = rf.permutes_subfield;
  return j;
}

inline json to_json(const FieldCtx& ctx, const DescentReport& rep) {
  json reduced = json::array();
  for (const auto& rf : rep.reduced) reduced.push_back(to_json(ctx, rf));
  json j = {{"s", rep.s},
            {"exists", rep.exists},
            {"delta", rep.delta},
            {"delta1", rep.delta1},
            {"delta2", rep.delta2},
            {"coefficients", detail::elements(ctx, rep.coefficients)},
            {"reduced", std::move(reduced)}};
  if (rep.t) j["t"] = *rep.t;
  j["delta_s"] = rep.delta_s;
  j["validated"] = rep.validated;
  return j;
}

// ---- Survey rows -----------------------------------------------------------

inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{"q", "p",  "r",       "a",    "n",    "m",    "d",
                                             "is_perm", "class_id", "thm7", "cor4", "cor5", "cor6", "cor8"};
  return cols;
}

inline Mark parse_mark(std::string_view s) {
  for (Mark m : {Mark::Holds, Mark::Violated, Mark::Exceptional, Mark::Inadmissible, Mark::Listed, Mark::NotApplicable})
    if (to_string(m) == s) return m;
  throw Error(ErrorKind::ParseError, "unknown mark '" + std::string(s) + "'");
}

inline std::optional<Cor8Case> parse_cor8(std::string_view s) {
  if (s == "none") return std::nullopt;
  for (int i = 0; i < 7; ++i)
    if (to_string(static_cast<Cor8Case>(i)) == s) return static_cast<Cor8Case>(i);
  throw Error(ErrorKind::ParseError, "unknown cor8 case '" + std::string(s) + "'");
}

inline std::string cor8_text(const std::optional<Cor8Case>& c) { return c ? std::string(to_string(*c)) : "none"; }

inline json to_json(const FieldCtx& ctx, const SurveyRow& row) {
  return {{"q", row.q},
          {"p", row.p},
          {"r", row.r},
          {"a", format_element(ctx, row.a)},
          {"n", row.n},
          {"m", row.m},
          {"d", row.d},
          {"is_perm", row.is_perm},
          {"class_id", format_element(ctx, row.class_id)},
          {"thm7", std::string(to_string(row.thm7))},
          {"cor4", std::string(to_string(row.cor4))},
          {"cor5", std::string(to_string(row.cor5))},
          {"cor6", std::string(to_string(row.cor6))},
          {"cor8", cor8_text(row.cor8)}};
}

inline SurveyRow survey_row_from_json(const FieldCtx& ctx, const json& j) {
  SurveyRow row;
  row.q = detail::get<u64>(j, "q");
  row.p = detail::get<u64>(j, "p");
  row.r = detail::get<unsigned>(j, "r");
  if (row.q != ctx.q() || row.p != ctx.p() || row.r != ctx.r())
    throw Error(ErrorKind::ParseError, "row belongs to a different field");
  row.a = parse_element(ctx, detail::get<std::string>(j, "a"));
  row.n = detail::get<u64>(j, "n");
  row.m = detail::get<u64>(j, "m");
  row.d = detail::get<u64>(j, "d");
  row.is_perm = detail::get<bool>(j, "is_perm");
  row.class_id = parse_element(ctx, detail::get<std::string>(j, "class_id"));
  row.thm7 = parse_mark(detail::get<std::string>(j, "thm7"));
  row.cor4 = parse_mark(detail::get<std::string>(j, "cor4"));
  row.cor5 = parse_mark(detail::get<std::string>(j, "cor5"));
  row.cor6 = parse_mark(detail::get<std::string>(j, "cor6"));
  row.cor8 = parse_cor8(detail::get<std::string>(j, "cor8"));
  return row;
}

/// Extension-field elements contain commas, so they are quoted.
inline std::string csv_field(const std::string& s) {
  return s.find(',') == std::string::npos ? s : "\"" + s + "\"";
}

inline std::string csv_header() {
  std::string out;
  for (const auto& c : csv_columns()) out += (out.empty() ? "" : ",") + c;
  return out;
}

inline std::string to_csv(const FieldCtx& ctx, const SurveyRow& row) {
  std::ostringstream os;
  os << row.q << ',' << row.p << ',' << row.r << ',' << csv_field(format_element(ctx, row.a)) << ',' << row.n << ','
     << row.m << ',' << row.d << ',' << (row.is_perm ? "true" : "false") << ','
     << csv_field(format_element(ctx, row.class_id)) << ',' << to_string(row.thm7) << ',' << to_string(row.cor4)
     << ',' << to_string(row.cor5) << ',' << to_string(row.cor6) << ',' << cor8_text(row.cor8);
  return os.str();
}

inline std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char ch : line) {
    if (ch == '"') {
      quoted = !quoted;
    } else if (ch == ',' && !quoted) {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

inline SurveyRow survey_row_from_csv(const FieldCtx& ctx, std::string_view line) {
  const auto f = split_csv(line);
  if (f.size() != csv_columns().size()) throw Error(ErrorKind::ParseError, "wrong number of CSV fields");
  json j;
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& c = cols[i];
    if (c == "a" || c == "class_id" || c.starts_with("thm") || c.starts_with("cor")) {
      j[c] = f[i];
    } else if (c == "is_perm") {
      if (f[i] != "true" && f[i] != "false") throw Error(ErrorKind::ParseError, "is_perm must be true or false");
      j[c] = f[i] == "true";
    } else {
      try {
        j[c] = std::stoull(f[i]);
      } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, "bad integer in column " + c);
      }
    }
  }
  return survey_row_from_json(ctx, j);
}

}  // namespace permbin::io

#endif  // PERMBIN_IO_HPP
