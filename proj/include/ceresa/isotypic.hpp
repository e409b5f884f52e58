#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "ceresa/arith.hpp"
#include "ceresa/error.hpp"

namespace ceresa {

using Rational = boost::multiprecision::cpp_rational;

/// a + b*sqrt(m) with exact rational a, b. m == 1 marks a rational element.
struct QFieldElement {
  Rational a{0}, b{0};
  i64 m = 1;

  QFieldElement() = default;
  QFieldElement(Rational a_, Rational b_ = 0, i64 m_ = 1) : a(std::move(a_)), b(std::move(b_)), m(m_) {}
  static QFieldElement from_int(i64 v) { return QFieldElement(Rational(v)); }

  bool is_rational() const { return b == 0; }
  bool is_zero() const { return a == 0 && b == 0; }
  QFieldElement conjugate() const { return QFieldElement(a, -b, m); }
  Rational norm() const { return a * a - b * b * m; }

  static i64 common_radicand(const QFieldElement& x, const QFieldElement& y) {
    if (x.b == 0) return y.m;
    if (y.b == 0) return x.m;
    if (x.m != y.m)
      throw Error(ErrorCode::UnsupportedSupport,
                  "mixed radicands " + std::to_string(x.m) + " and " + std::to_string(y.m));
    return x.m;
  }

  friend QFieldElement operator+(const QFieldElement& x, const QFieldElement& y) {
    return QFieldElement(x.a + y.a, x.b + y.b, common_radicand(x, y));
  }
  friend QFieldElement operator-(const QFieldElement& x, const QFieldElement& y) {
    return QFieldElement(x.a - y.a, x.b - y.b, common_radicand(x, y));
  }
  QFieldElement operator-() const { return QFieldElement(-a, -b, m); }
  friend QFieldElement operator*(const QFieldElement& x, const QFieldElement& y) {
    i64 m = common_radicand(x, y);
    return QFieldElement(x.a * y.a + x.b * y.b * m, x.a * y.b + x.b * y.a, m);
  }
  QFieldElement inverse() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of 0 in quadratic field");
    Rational n = norm();
    return QFieldElement(a / n, -b / n, m);
  }
  friend QFieldElement operator/(const QFieldElement& x, const QFieldElement& y) { return x * y.inverse(); }
  friend bool operator==(const QFieldElement& x, const QFieldElement& y) {
    return x.a == y.a && x.b == y.b && (x.b == 0 || x.m == y.m);
  }

  std::string to_string() const {
    std::ostringstream os;
    if (b == 0) {
      os << a;
    } else {
      if (a != 0) os << a << (b > 0 ? "+" : "");
      if (b == -1) os << "-";
      else if (b != 1) os << b << "*";
      os << "sqrt(" << m << ")";
    }
    return os.str();
  }
};

struct EigenForm {
  std::string label;
  int al_sign = 1;
  i64 radicand = 1;
  int dimension = 1;
  std::map<i64, QFieldElement> eigenvalues;
};

struct EigenData {
  i64 level = 0;
  std::vector<EigenForm> forms;
  // Optional Mordell-Weil data shipped alongside the eigenvalues.
  int rank = 0;
  i64 shadow_scale = 1;
  std::map<std::string, std::vector<i64>> shadows;
  std::map<i64, std::vector<std::vector<i64>>> hecke_action;

  const EigenForm& form(const std::string& label) const {
    for (const auto& f : forms)
      if (f.label == label) return f;
    throw Error(ErrorCode::SchemaError, "no form labelled " + label);
  }
};

using LatticePoint = std::vector<i64>;

namespace detail {

[[noreturn]] inline void schema_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::SchemaError, where + ": " + what);
}

inline Rational json_rational(const nlohmann::json& num, const nlohmann::json& den, const std::string& where) {
  if (!num.is_number_integer() || !den.is_number_integer()) schema_fail(where, "expected integers");
  i64 d = den.get<i64>();
  if (d == 0) schema_fail(where, "zero denominator");
  return Rational(num.get<i64>(), d);
}

inline bool conjugate_forms(const EigenForm& x, const EigenForm& y) {
  if (x.radicand != y.radicand || x.eigenvalues.size() != y.eigenvalues.size()) return false;
  for (const auto& [l, v] : x.eigenvalues) {
    auto it = y.eigenvalues.find(l);
    if (it == y.eigenvalues.end() || !(it->second == v.conjugate())) return false;
  }
  return true;
}

inline i64 parse_prime_key(const std::string& key, const std::string& where) {
  try {
    std::size_t pos = 0;
    i64 l = std::stoll(key, &pos);
    if (pos == key.size() && l > 1) return l;
  } catch (const std::exception&) {
  }
  schema_fail(where, "key '" + key + "' is not a prime");
}

}  // namespace detail

/// Every irrational form needs a Galois conjugate carrying the same Atkin-Lehner sign.
inline void validate_conjugacy(const EigenData& data) {
  for (const auto& f : data.forms) {
    bool irrational = false;
    for (const auto& [l, v] : f.eigenvalues) irrational |= !v.is_rational();
    if (!irrational) continue;
    const EigenForm* partner = nullptr;
    for (const auto& g : data.forms)
      if (&g != &f && detail::conjugate_forms(f, g)) partner = &g;
    if (!partner) throw Error(ErrorCode::ConjugacyError, "form " + f.label + " has no conjugate embedding");
    if (partner->al_sign != f.al_sign)
      throw Error(ErrorCode::ConjugacyError,
                  "forms " + f.label + " and " + partner->label + " are conjugate but have different AL signs");
  }
}

inline EigenData parse_eigendata(const nlohmann::json& j) {
  using detail::schema_fail;
  if (!j.is_object()) schema_fail("root", "expected an object");
  if (!j.contains("level") || !j["level"].is_number_integer()) schema_fail("level", "missing or not an integer");
  if (!j.contains("forms") || !j["forms"].is_array()) schema_fail("forms", "missing or not an array");
  EigenData data;
  data.level = j["level"].get<i64>();
  for (std::size_t i = 0; i < j["forms"].size(); ++i) {
    const auto& jf = j["forms"][i];
    std::string where = "forms[" + std::to_string(i) + "]";
    if (!jf.is_object()) schema_fail(where, "expected an object");
    EigenForm f;
    if (!jf.contains("label") || !jf["label"].is_string()) schema_fail(where + ".label", "missing or not a string");
    f.label = jf["label"].get<std::string>();
    if (!jf.contains("al_sign") || !jf["al_sign"].is_number_integer())
      schema_fail(where + ".al_sign", "missing or not an integer");
    f.al_sign = jf["al_sign"].get<int>();
    if (f.al_sign != 1 && f.al_sign != -1) schema_fail(where + ".al_sign", "must be +1 or -1");
    f.radicand = jf.value("field_radicand", i64{1});
    f.dimension = jf.value("dimension", f.radicand == 1 ? 1 : 2);
    if (!jf.contains("eigenvalues") || !jf["eigenvalues"].is_object())
      schema_fail(where + ".eigenvalues", "missing or not an object");
    for (const auto& [key, v] : jf["eigenvalues"].items()) {
      std::string w = where + ".eigenvalues." + key;
      i64 l = detail::parse_prime_key(key, w);
      if (!v.is_array() || (v.size() != 2 && v.size() != 4)) schema_fail(w, "expected [a_num, a_den, b_num, b_den]");
      Rational a = detail::json_rational(v[0], v[1], w);
      Rational b = v.size() == 4 ? detail::json_rational(v[2], v[3], w) : Rational(0);
      if (b != 0 && f.radicand == 1) schema_fail(w, "irrational eigenvalue on a rational form");
      f.eigenvalues[l] = QFieldElement(a, b, f.radicand);
    }
    data.forms.push_back(std::move(f));
  }
  if (j.contains("rank")) {
    if (!j["rank"].is_number_integer()) schema_fail("rank", "not an integer");
    data.rank = j["rank"].get<int>();
  }
  if (j.contains("shadow_scale")) {
    if (!j["shadow_scale"].is_number_integer()) schema_fail("shadow_scale", "not an integer");
    data.shadow_scale = j["shadow_scale"].get<i64>();
  }
  if (j.contains("shadows")) {
    for (const auto& [key, v] : j["shadows"].items()) {
      std::string w = "shadows." + key;
      if (!v.is_array()) schema_fail(w, "expected an integer vector");
      for (const auto& c : v)
        if (!c.is_number_integer()) schema_fail(w, "expected an integer vector");
      LatticePoint pt = v.get<LatticePoint>();
      if (data.rank && static_cast<int>(pt.size()) != data.rank) schema_fail(w, "dimension differs from rank");
      data.shadows[key] = pt;
    }
  }
  if (j.contains("hecke_action")) {
    for (const auto& [key, v] : j["hecke_action"].items()) {
      std::string w = "hecke_action." + key;
      i64 l = detail::parse_prime_key(key, w);
      if (!v.is_array() || static_cast<int>(v.size()) != data.rank) schema_fail(w, "matrix is not rank x rank");
      for (const auto& row : v) {
        if (!row.is_array() || static_cast<int>(row.size()) != data.rank) schema_fail(w, "matrix is not rank x rank");
        for (const auto& c : row)
          if (!c.is_number_integer()) schema_fail(w, "entries must be integers");
      }
      data.hecke_action[l] = v.get<std::vector<std::vector<i64>>>();
    }
  }
  validate_conjugacy(data);
  return data;
}

inline EigenData ingest_eigendata(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::SchemaError, path + ": cannot open");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, path + ": " + e.what());
  }
  try {
    return parse_eigendata(j);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SchemaError) throw Error(ErrorCode::SchemaError, path + ": " + e.what());
    throw;
  }
}

/// Atkin-Lehner sign pieces of the diagonal shadow. Coordinates are halves of integers.
struct SignComponents {
  std::vector<Rational> ppp, pmm, mpm, mmp;
};

inline SignComponents al_decompose(const LatticePoint& sh_wd, const LatticePoint& sh_delta) {
  for (i64 c : sh_delta)
    if (c != 0) throw Error(ErrorCode::NonzeroDelta, "Sh(Delta) must vanish");
  SignComponents out;
  for (i64 c : sh_wd) {
    out.ppp.push_back(Rational(c, 2));
    out.mmp.push_back(Rational(-c, 2));
    // The two remaining components agree by symmetry and the four sum to Sh(Delta) = 0.
    out.pmm.push_back(Rational(0));
    out.mpm.push_back(Rational(0));
  }
  return out;
}

/// An operator on the left of a shadow equation: the diagonal, T_l, or w_N.
struct ShadowOperator {
  enum class Kind { Delta, Hecke, AtkinLehner } kind = Kind::Delta;
  i64 l = 0;

  static ShadowOperator parse(const std::string& s) {
    try {
      if (s == "Delta") return {Kind::Delta, 0};
      if (s.size() > 1 && s[0] == 'T') return {Kind::Hecke, std::stoll(s.substr(1))};
      if (s.size() > 1 && s[0] == 'w') return {Kind::AtkinLehner, std::stoll(s.substr(1))};
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::SchemaError, "unknown shadow operator " + s);
  }
  std::string to_string() const {
    switch (kind) {
      case Kind::Delta: return "Delta";
      case Kind::Hecke: return "T" + std::to_string(l);
      case Kind::AtkinLehner: return "w" + std::to_string(l);
    }
    return "";
  }
  QFieldElement eigenvalue(const EigenForm& f) const {
    switch (kind) {
      case Kind::Delta: return QFieldElement::from_int(1);
      case Kind::AtkinLehner: return QFieldElement::from_int(f.al_sign);
      case Kind::Hecke: {
        auto it = f.eigenvalues.find(l);
        if (it == f.eigenvalues.end())
          throw Error(ErrorCode::SchemaError, "form " + f.label + " has no eigenvalue at " + std::to_string(l));
        return it->second;
      }
    }
    return {};
  }
};

struct IsotypicSolution {
  std::vector<std::string> sources;  // s in a_{s,t}
  std::vector<std::string> targets;  // t in a_{s,t}
  // value[{s, t}] = coordinates of Sh(Gamma_{sst}, Delta)
  std::map<std::pair<std::string, std::string>, std::vector<QFieldElement>> value;

  bool is_zero(const std::string& s, const std::string& t) const {
    for (const auto& x : value.at({s, t}))
      if (!x.is_zero()) return false;
    return true;
  }
};

namespace detail {

struct IsotypicEquation {
  ShadowOperator op;
  std::optional<i64> image;  // Hecke prime applied to the shadow
  std::vector<Rational> rhs;
};

inline std::vector<Rational> apply_matrix(const std::vector<std::vector<i64>>& m, const std::vector<Rational>& v) {
  std::vector<Rational> out(m.size(), Rational(0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += Rational(m[i][j]) * v[j];
  return out;
}

// Gauss-Jordan elimination. Returns the first column without a pivot when the system is singular.
inline std::optional<std::size_t> solve_in_place(std::vector<std::vector<QFieldElement>>& a,
                                                 std::vector<QFieldElement>& b, std::vector<QFieldElement>& x) {
  std::size_t n = a.empty() ? 0 : a[0].size();
  std::size_t rows = a.size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c].is_zero()) ++piv;
    if (piv == rows) return c;
    std::swap(a[piv], a[r]);
    std::swap(b[piv], b[r]);
    QFieldElement inv = a[r][c].inverse();
    for (std::size_t k = c; k < n; ++k) a[r][k] = a[r][k] * inv;
    b[r] = b[r] * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      QFieldElement f = a[i][c];
      for (std::size_t k = c; k < n; ++k) a[i][k] = a[i][k] - f * a[r][k];
      b[i] = b[i] - f * b[r];
    }
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (!b[i].is_zero()) throw Error(ErrorCode::SingularSystem, "overdetermined system is inconsistent");
  x.assign(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(n));
  return std::nullopt;
}

inline std::string collision_report(const std::vector<const EigenForm*>& sources,
                                    const std::vector<const EigenForm*>& targets,
                                    const std::vector<IsotypicEquation>& eqs) {
  auto row = [&](const EigenForm& s) {
    std::vector<QFieldElement> v;
    for (const auto& e : eqs)
      if (!e.image) v.push_back(e.op.eigenvalue(s));
    return v;
  };
  for (std::size_t i = 0; i < sources.size(); ++i)
    for (std::size_t j = i + 1; j < sources.size(); ++j)
      if (row(*sources[i]) == row(*sources[j]))
        return "forms " + sources[i]->label + " and " + sources[j]->label +
               " have the same eigenvalue on every operator";
  for (std::size_t i = 0; i < targets.size(); ++i)
    for (std::size_t j = i + 1; j < targets.size(); ++j) {
      bool same = true;
      for (const auto& e : eqs)
        if (e.image && !(targets[i]->eigenvalues.at(*e.image) == targets[j]->eigenvalues.at(*e.image))) same = false;
      if (same)
        return "targets " + targets[i]->label + " and " + targets[j]->label +
               " are not separated by the image operators";
    }
  return "too few independent operators for the number of forms";
}

}  // namespace detail

/// Solves Sh(phi) = sum_{s,t} phi(s) a_{s,t} for a_{s,t} = Sh(Gamma_{sst}, Delta).
/// The targets t are the forms with Atkin-Lehner sign +1. The images of each shadow under
/// T_l for l in image_primes give further equations, on which a_{s,t} scales by a_{t,l}.
inline IsotypicSolution isotypic_solve(const EigenData& data, const std::map<std::string, LatticePoint>& shadows,
                                       const std::vector<i64>& image_primes = {}) {
  std::vector<const EigenForm*> sources, targets;
  for (const auto& f : data.forms) {
    sources.push_back(&f);
    if (f.al_sign == 1) targets.push_back(&f);
  }
  if (targets.empty()) throw Error(ErrorCode::SingularSystem, "no forms with Atkin-Lehner sign +1");

  std::vector<detail::IsotypicEquation> eqs;
  std::size_t dim = 0;
  for (const auto& [name, pt] : shadows) {
    if (dim == 0) dim = pt.size();
    if (pt.size() != dim) throw Error(ErrorCode::SchemaError, "shadow " + name + " has the wrong dimension");
    std::vector<Rational> v(pt.begin(), pt.end());
    ShadowOperator op = ShadowOperator::parse(name);
    eqs.push_back({op, std::nullopt, v});
    for (i64 l : image_primes) {
      auto it = data.hecke_action.find(l);
      if (it == data.hecke_action.end())
        throw Error(ErrorCode::SchemaError, "no Hecke matrix for T" + std::to_string(l));
      eqs.push_back({op, l, detail::apply_matrix(it->second, v)});
    }
  }
  std::size_t unknowns = sources.size() * targets.size();
  if (eqs.size() < unknowns)
    throw Error(ErrorCode::SingularSystem,
                std::to_string(eqs.size()) + " equations for " + std::to_string(unknowns) + " unknowns");

  std::vector<std::vector<QFieldElement>> base(eqs.size(), std::vector<QFieldElement>(unknowns));
  for (std::size_t r = 0; r < eqs.size(); ++r)
    for (std::size_t i = 0; i < sources.size(); ++i)
      for (std::size_t k = 0; k < targets.size(); ++k) {
        QFieldElement c = eqs[r].op.eigenvalue(*sources[i]);
        if (eqs[r].image) c = c * ShadowOperator{ShadowOperator::Kind::Hecke, *eqs[r].image}.eigenvalue(*targets[k]);
        base[r][i * targets.size() + k] = c;
      }

  IsotypicSolution sol;
  for (auto* s : sources) sol.sources.push_back(s->label);
  for (auto* t : targets) sol.targets.push_back(t->label);
  for (std::size_t coord = 0; coord < dim; ++coord) {
    auto a = base;
    std::vector<QFieldElement> b, x;
    for (const auto& e : eqs) b.emplace_back(e.rhs[coord]);
    if (detail::solve_in_place(a, b, x))
      throw Error(ErrorCode::SingularSystem, detail::collision_report(sources, targets, eqs));
    for (std::size_t i = 0; i < sources.size(); ++i)
      for (std::size_t k = 0; k < targets.size(); ++k)
        sol.value[{sources[i]->label, targets[k]->label}].push_back(x[i * targets.size() + k]);
  }
  return sol;
}

/// Recomputes a shadow (optionally its image under T_image) from solved components.
inline std::vector<QFieldElement> isotypic_forward(const EigenData& data, const IsotypicSolution& sol,
                                                   const std::string& op_name,
                                                   std::optional<i64> image = std::nullopt) {
  ShadowOperator op = ShadowOperator::parse(op_name);
  std::vector<QFieldElement> acc;
  for (const auto& s : sol.sources)
    for (const auto& t : sol.targets) {
      QFieldElement c = op.eigenvalue(data.form(s));
      if (image) c = c * ShadowOperator{ShadowOperator::Kind::Hecke, *image}.eigenvalue(data.form(t));
      const auto& v = sol.value.at({s, t});
      if (acc.empty()) acc.assign(v.size(), QFieldElement());
      for (std::size_t k = 0; k < v.size(); ++k) acc[k] = acc[k] + c * v[k];
    }
  return acc;
}

/// Image of a lattice point under the shipped integral Hecke matrix.
inline std::vector<Rational> hecke_image(const EigenData& data, i64 l, const LatticePoint& pt) {
  auto it = data.hecke_action.find(l);
  if (it == data.hecke_action.end()) throw Error(ErrorCode::SchemaError, "no Hecke matrix for T" + std::to_string(l));
  return detail::apply_matrix(it->second, std::vector<Rational>(pt.begin(), pt.end()));
}

}  // namespace ceresa
