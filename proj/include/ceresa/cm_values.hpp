#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ceresa/arith.hpp"
#include "ceresa/error.hpp"

namespace ceresa {

/// A characteristic-zero CM j-invariant.
using CmValue = std::variant<BigInt, QuadraticSurd, BiquadraticSurd>;

struct CmOrder {
  i64 d = 0;  // discriminant is -d
  std::vector<std::string> class_poly;  // monic, highest degree first
  std::optional<CmValue> j;             // one root, when tabulated
};

namespace detail {

inline QuadraticSurd surd(const char* a, const char* b, i64 m) {
  return {BigInt(a), BigInt(b), m, 1};
}

inline BiquadraticSurd disc448_value() {
  // 3^3 5^3 (A - B sqrt7 + (-C sqrt2 + D sqrt14)/2), over basis {1, sqrt2, sqrt7, sqrt14}.
  const BigInt k = 3375;
  const BigInt A("5598484075240117636186520");
  const BigInt B("2116028083148681895438336");
  const BigInt C("7917452107934369456841021");
  const BigInt D("2992515613551209199902175");
  BiquadraticSurd v;
  v.c = {2 * k * A, -k * C, -2 * k * B, k * D};
  v.r = 2;
  v.s = 7;
  v.denom = 2;
  return v;
}

}  // namespace detail

inline const std::vector<CmOrder>& cm_orders() {
  static const std::vector<CmOrder> table = [] {
    using detail::surd;
    std::vector<CmOrder> t;
    auto rational = [&](i64 d, const char* j) {
      BigInt v(j);
      BigInt neg = -v;
      t.push_back({d, {"1", neg.str()}, CmValue{v}});
    };
    rational(3, "0");
    rational(4, "1728");
    rational(7, "-3375");
    rational(8, "8000");
    rational(11, "-32768");
    rational(12, "54000");
    rational(16, "287496");
    rational(19, "-884736");
    rational(27, "-12288000");
    rational(28, "16581375");
    rational(43, "-884736000");
    rational(67, "-147197952000");
    rational(163, "-262537412640768000");
    t.push_back({32, {"1", "-52250000", "12167000000"},
                 CmValue{surd("26125000", "18473000", 2)}});
    t.push_back({36, {"1", "-153542016", "-1790957481984"},
                 CmValue{surd("76771008", "44330496", 3)}});
    t.push_back({48, {"1", "-2835810000", "6549518250000"},
                 CmValue{surd("1417905000", "818626500", 3)}});
    t.push_back({64, {"1", "-82226316240", "-7367066619912"},
                 CmValue{surd("41113158120", "29071392966", 2)}});
    t.push_back({72, {"1", "-377674768000", "232381513792000000"},
                 CmValue{surd("188837384000", "77092288000", 6)}});
    t.push_back({112, {"1", "-274917323970000", "1337635747140890625"},
                 CmValue{surd("137458661985000", "-51954490735875", 7)}});
    t.push_back({147, {"1", "34848505552896000", "11356800389480448000000"},
                 CmValue{surd("-17424252776448000", "3802283679744000", 21)}});
    t.push_back({448,
                 {"1", "-75579535015741588088518020000",
                  "-1251995474985759392628697477841250000",
                  "18314847446238545696830716579562500000000",
                  "-8964424282273362890505339044524081787109375"},
                 CmValue{detail::disc448_value()}});
    return t;
  }();
  return table;
}

inline const CmOrder* find_cm_order(i64 d) {
  for (const auto& o : cm_orders())
    if (o.d == d) return &o;
  return nullptr;
}

inline const CmOrder& cm_order(i64 d) {
  const CmOrder* o = find_cm_order(d);
  if (!o) throw Error(ErrorCode::UnsupportedSupport, "no class polynomial for D" + std::to_string(d));
  return *o;
}

/// H_{-d}(x) evaluated in F_p^2.
inline Fp2Element eval_class_poly(i64 d, const Fp2Element& x) {
  const CmOrder& o = cm_order(d);
  Fp2Element acc = Fp2Element::zero(x.field);
  for (const auto& c : o.class_poly) acc = acc * x + Fp2Element::from_int(x.field, BigInt(c));
  return acc;
}

inline Fp2Element reduce_cm_value(const CmValue& v, const Fp2Field& field) {
  return std::visit(
      [&](const auto& val) -> Fp2Element {
        using T = std::decay_t<decltype(val)>;
        if constexpr (std::is_same_v<T, BigInt>)
          return Fp2Element::from_int(field, val);
        else
          return reduce_surd(val, field);
      },
      v);
}

}  // namespace ceresa
