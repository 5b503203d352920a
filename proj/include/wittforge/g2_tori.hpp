#pragma once

// Maximal torus types of G2 = Aut(C). A type is a couple (F', L) of a
// quadratic and a cubic etale algebra, i.e. a class in H^1(k, S2 x S3). For
// L = k x E the embedding criterion reduces to: C is split by F' and by F''
// where [F'] + [F''] = [E]. The Galois cubic case L = K(t^(1/3)) is decided
// by replaying the trace-form obstruction.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "wittforge/arith_q.hpp"
#include "wittforge/comp_alg.hpp"
#include "wittforge/error.hpp"
#include "wittforge/fields.hpp"
#include "wittforge/form.hpp"
#include "wittforge/qform.hpp"
#include "wittforge/scalar.hpp"

namespace wittforge {

using Json = nlohmann::ordered_json;

enum class CubicKind { Split3, QuadTimes, PureCubicGalois };

struct TorusType {
  SquareClass quad;                  // class of F'; 1 is k x k
  CubicKind cubic = CubicKind::Split3;
  std::optional<SquareClass> cubic_class;  // class of E for QuadTimes
  std::string cubic_var;                   // t for PureCubicGalois, L = K(t^(1/3))

  std::string to_string() const {
    std::string c;
    switch (cubic) {
      case CubicKind::Split3: c = "Split3"; break;
      case CubicKind::QuadTimes: c = "QuadTimes(" + cubic_class->to_string() + ")"; break;
      case CubicKind::PureCubicGalois: c = "PureCubicGalois(" + cubic_var + ")"; break;
    }
    return "(" + quad.to_string() + ", " + c + ")";
  }
};

/// Whether the base contains a primitive cube root of unity.
inline bool has_cube_roots_of_unity(const FieldTower& k) {
  return k.base() == BaseKind::Finite && k.base_order() % 3 == 1;
}

inline std::vector<TorusType> torus_type_catalog(const FieldRef& field) {
  const auto classes = enumerate_square_classes(field);
  const bool galois_cubic = has_cube_roots_of_unity(*field) && field->is_laurent();
  std::vector<TorusType> out;
  for (const auto& q : classes) {
    out.push_back({q, CubicKind::Split3, std::nullopt, {}});
    for (const auto& e : classes) {
      if (!e.is_one()) out.push_back({q, CubicKind::QuadTimes, e, {}});
    }
    if (galois_cubic) out.push_back({q, CubicKind::PureCubicGalois, std::nullopt, field->outer_var()});
  }
  return out;
}

/// Whether the etale algebra k(sqrt(delta)) splits C; the split algebra k x k
/// splits C exactly when C is split.
inline bool split_by(const CompositionAlgebra& c, const SquareClass& delta) {
  if (delta.is_one()) return is_isotropic(c.norm_form());
  return splits_over_quadratic(c.norm_form(), delta);
}

inline std::vector<SquareClass> splitting_profile(const CompositionAlgebra& c) {
  std::vector<SquareClass> out;
  for (const auto& d : enumerate_square_classes(c.field())) {
    if (!d.is_one() && splits_over_quadratic(c.norm_form(), d)) out.push_back(d);
  }
  return out;
}

inline SquareClass cubic_quadratic_class(const TorusType& tau) {
  if (tau.cubic == CubicKind::PureCubicGalois) {
    throw Error(ErrorCode::UnsupportedCubic, "Galois cubic types go through cubic_obstruction_report");
  }
  return tau.cubic == CubicKind::QuadTimes ? *tau.cubic_class : SquareClass(tau.quad.field());
}

struct TypeVerdict {
  bool admissible;
  std::string reason;
};

inline TypeVerdict admits_type_verdict(const CompositionAlgebra& c, const TorusType& tau) {
  if (c.dim() != 8) throw Error(ErrorCode::PreconditionFailed, "torus types are defined for octonion algebras");
  require_same_field(c.field(), tau.quad.field());
  const SquareClass f1 = tau.quad;
  const SquareClass f2 = f1 * cubic_quadratic_class(tau);
  const bool s1 = split_by(c, f1);
  const bool s2 = split_by(c, f2);
  std::string reason = "F'=" + f1.to_string() + (s1 ? " splits" : " does not split") + "; F''=" + f2.to_string() +
                       (s2 ? " splits" : " does not split");
  return {s1 && s2, std::move(reason)};
}

inline bool admits_type(const CompositionAlgebra& c, const TorusType& tau) {
  return admits_type_verdict(c, tau).admissible;
}

/// The same decision computed from the splitting profile alone.
inline bool admits_type_from_profile(const std::vector<SquareClass>& profile, bool algebra_split,
                                     const TorusType& tau) {
  const auto splits = [&](const SquareClass& d) {
    if (d.is_one()) return algebra_split;
    return std::find(profile.begin(), profile.end(), d) != profile.end();
  };
  const SquareClass f1 = tau.quad;
  return splits(f1) && splits(f1 * cubic_quadratic_class(tau));
}

inline bool genus_equal_rational(const BigRational& a1, const BigRational& b1, const BigRational& a2,
                                 const BigRational& b2) {
  return ramification_set(a1, b1) == ramification_set(a2, b2);
}

// ---------------------------------------------------------------------------
// Trace forms of L = K[x]/(f), f monic.

namespace detail {

using Coords = std::vector<LaurentPoly>;

/// x * v in the basis 1, x, ..., x^(n-1); `low` holds f's coefficients c_0..c_(n-1).
inline Coords times_x(const Coords& v, const Coords& low) {
  const std::size_t n = v.size();
  Coords w(n, LaurentPoly::zero(v[0].field()));
  for (std::size_t i = 0; i + 1 < n; ++i) w[i + 1] = v[i];
  for (std::size_t k = 0; k < n; ++k) w[k] -= v[n - 1] * low[k];
  return w;
}

/// Trace of multiplication by v: sum over i of the x^i-coordinate of x^i v.
inline LaurentPoly trace_of(const Coords& v, const Coords& low) {
  LaurentPoly tr = LaurentPoly::zero(v[0].field());
  Coords xv = v;
  for (std::size_t i = 0; i < v.size(); ++i) {
    tr += xv[i];
    xv = times_x(xv, low);
  }
  return tr;
}

inline RationalFunction determinant(Matrix<RationalFunction> a) {
  const std::size_t n = a.size();
  RationalFunction det(LaurentPoly::one(a[0][0].num().field()));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv][k].is_zero()) ++piv;
    if (piv == n) return RationalFunction(LaurentPoly::zero(det.num().field()));
    if (piv != k) {
      std::swap(a[piv], a[k]);
      det = -det;
    }
    det = det * a[k][k];
    const RationalFunction inv = a[k][k].inverse();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k].is_zero()) continue;
      const RationalFunction factor = a[i][k] * inv;
      for (std::size_t j = k; j < n; ++j) a[i][j] = a[i][j] - factor * a[k][j];
    }
  }
  return det;
}

inline Matrix<RationalFunction> lift(const Matrix<LaurentPoly>& m) {
  Matrix<RationalFunction> r;
  for (const auto& row : m) {
    std::vector<RationalFunction> rr;
    for (const auto& x : row) rr.emplace_back(x);
    r.push_back(std::move(rr));
  }
  return r;
}

}  // namespace detail

/// Monic f = x^n + c_(n-1) x^(n-1) + ... + c_0, given by its lower coefficients.
struct MonicPolynomial {
  std::vector<LaurentPoly> low;

  std::size_t degree() const { return low.size(); }
};

/// G_ij = Tr_{L/K}(lambda x^i x^j) for L = K[x]/(f).
inline Matrix<LaurentPoly> trace_form_gram(const FieldRef& field, const MonicPolynomial& f,
                                           const std::vector<LaurentPoly>& lambda) {
  const std::size_t n = f.degree();
  if (n == 0) throw Error(ErrorCode::PreconditionFailed, "polynomial must have positive degree");
  if (lambda.size() != n) throw Error(ErrorCode::DimensionMismatch, "lambda needs one coordinate per basis vector");
  for (const auto& c : f.low) require_same_field(field, c.field());
  for (const auto& c : lambda) require_same_field(field, c.field());

  std::vector<detail::Coords> lambda_pow;  // lambda * x^m for m = 0 .. 2n-2
  detail::Coords cur = lambda;
  for (std::size_t m = 0; m + 1 < 2 * n; ++m) {
    lambda_pow.push_back(cur);
    cur = detail::times_x(cur, f.low);
  }
  std::vector<LaurentPoly> traces;
  traces.reserve(lambda_pow.size());
  for (const auto& v : lambda_pow) traces.push_back(detail::trace_of(v, f.low));
  Matrix<LaurentPoly> g(n, std::vector<LaurentPoly>(n, LaurentPoly::zero(field)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) g[i][j] = traces[i + j];
  }
  return g;
}

inline bool is_separable(const FieldRef& field, const MonicPolynomial& f) {
  std::vector<LaurentPoly> one(f.degree(), LaurentPoly::zero(field));
  one[0] = LaurentPoly::one(field);
  return !detail::determinant(detail::lift(trace_form_gram(field, f, one))).is_zero();
}

/// N_{L/K}(lambda) as the determinant of multiplication by lambda.
inline RationalFunction etale_norm(const FieldRef& field, const MonicPolynomial& f,
                                   const std::vector<LaurentPoly>& lambda) {
  const std::size_t n = f.degree();
  Matrix<LaurentPoly> m(n, std::vector<LaurentPoly>(n, LaurentPoly::zero(field)));
  detail::Coords col = lambda;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) m[i][j] = col[i];
    col = detail::times_x(col, f.low);
  }
  return detail::determinant(detail::lift(m));
}

inline DiagonalForm trace_form(const FieldRef& field, const MonicPolynomial& f, const std::vector<LaurentPoly>& lambda) {
  if (!is_separable(field, f)) throw Error(ErrorCode::NotSeparable, "K[x]/(f) is not etale");
  if (etale_norm(field, f, lambda).is_zero()) throw Error(ErrorCode::LambdaNotUnit, "lambda is not invertible in L");
  return diagonalize(field, trace_form_gram(field, f, lambda));
}

/// <<d>> (x) <1, -b, -c, bc>, the norm of Jacobson's construction from the
/// hermitian form <-b, -c, bc> over k(sqrt d).
inline DiagonalForm jacobson_norm(const FieldRef& field, const SquareClass& d, const SquareClass& b,
                                  const SquareClass& c) {
  if (d.is_one()) throw Error(ErrorCode::DSquare, "d must be a nonsquare");
  return tensor(pfister(field, {d}), pfister(field, {b, c}));
}

// ---------------------------------------------------------------------------
// Reports

struct Report {
  std::string field;
  Json algebra = Json::array();
  std::vector<std::string> catalog;
  Json admissible = Json::array();
  std::string verdict;
  Json evidence = Json::array();

  Json to_json() const {
    Json j;
    j["field"] = field;
    j["algebra"] = algebra;
    j["catalog"] = catalog;
    j["admissible"] = admissible;
    j["verdict"] = verdict;
    j["evidence"] = evidence;
    return j;
  }

  static Report from_json(const Json& j) {
    Report r;
    r.field = j.at("field").get<std::string>();
    r.algebra = j.at("algebra");
    r.catalog = j.at("catalog").get<std::vector<std::string>>();
    r.admissible = j.at("admissible");
    r.verdict = j.at("verdict").get<std::string>();
    r.evidence = j.at("evidence");
    return r;
  }

  std::string serialize() const { return to_json().dump(2); }
  static Report parse(const std::string& text) { return from_json(Json::parse(text)); }

  friend bool operator==(const Report& a, const Report& b) {
    return a.field == b.field && a.algebra == b.algebra && a.catalog == b.catalog && a.admissible == b.admissible &&
           a.verdict == b.verdict && a.evidence == b.evidence;
  }
};

namespace detail {

inline Json slot_list(const CompositionAlgebra& c) {
  Json s = Json::array();
  for (const auto& x : c.slots()) s.push_back(x.to_string());
  return s;
}

inline void add_catalog_note(const FieldTower& k, Json& evidence) {
  if (k.base() == BaseKind::Finite && k.is_laurent()) {
    evidence.push_back(Json{{"note", "catalog omits unramified cubic field extensions; completeness over "
                                     "finite-base Laurent towers is not established"}});
  }
}

}  // namespace detail

/// Replays the Galois cubic case for a division octonion C over K = k((t))
/// and the quadratic class d of F'. An embedding of type (K(sqrt d),
/// K(t^(1/3))) would need lambda in L with N(lambda) a square (forcing
/// lambda to be a square, so lambda = 1) and b, c with
/// <<d,b,c>> = N_C and <<d>> (x) t_{L/K}(<1>) = <<d>> (x) <-b,-c,bc>.
inline Report cubic_obstruction_report(const CompositionAlgebra& c, const SquareClass& d) {
  const FieldRef& k = c.field();
  require_same_field(k, d.field());
  if (!k->finite_square_classes() || !k->is_laurent()) {
    throw Error(ErrorCode::PreconditionFailed, "needs a Laurent tower with finitely many square classes");
  }
  if (!has_cube_roots_of_unity(*k)) throw Error(ErrorCode::PreconditionFailed, "base lacks a primitive cube root of 1");
  if (c.dim() != 8) throw Error(ErrorCode::PreconditionFailed, "C must be an octonion algebra");
  if (is_isotropic(c.norm_form())) throw Error(ErrorCode::PreconditionFailed, "C is split");
  if (d.is_one()) throw Error(ErrorCode::PreconditionFailed, "d is a square");

  const std::size_t outer = k->num_vars() - 1;
  const std::string& t = k->outer_var();
  Report r;
  r.field = k->descriptor();
  r.algebra.push_back(detail::slot_list(c));
  const TorusType tau{d, CubicKind::PureCubicGalois, std::nullopt, t};
  r.catalog.push_back(tau.to_string());

  // (a) L = k'((pi)), pi^3 = t: classes lambda_0 pi^r have norm lambda_0^3 t^r.
  Json lambda_rows = Json::array();
  bool only_trivial = true;
  for (const auto& l0 : enumerate_square_classes(k->residue_field())) {
    for (int rr = 0; rr < 2; ++rr) {
      const SquareClass norm_class = lift_residue(k, l0, rr);
      const bool square_norm = norm_class.is_one();
      if (square_norm && !(l0.is_one() && rr == 0)) only_trivial = false;
      lambda_rows.push_back(Json{{"lambda0", l0.to_string()}, {"r", rr}, {"norm_is_square", square_norm}});
    }
  }
  r.evidence.push_back(Json{{"step", "lambda_reduction"}, {"only_square_lambda", only_trivial}, {"rows", lambda_rows}});

  // (b) trace form of K(t^(1/3)) with lambda = 1.
  Exponents te{};
  te[outer] = 1;
  MonicPolynomial f{{-LaurentPoly::monomial(k, Coeff::one_of(*k), te), LaurentPoly::zero(k), LaurentPoly::zero(k)}};
  std::vector<LaurentPoly> one{LaurentPoly::one(k), LaurentPoly::zero(k), LaurentPoly::zero(k)};
  const auto gram = trace_form_gram(k, f, one);
  const DiagonalForm t3 = trace_form(k, f, one);
  Json gram_json = Json::array();
  for (const auto& row : gram) {
    Json jr = Json::array();
    for (const auto& x : row) jr.push_back(x.to_string());
    gram_json.push_back(jr);
  }
  const SquareClass three = constant_square_class(k, 3);
  const DiagonalForm reference(k, {SquareClass(k), SquareClass(k), SquareClass::minus_one(k)});
  r.evidence.push_back(Json{{"step", "trace_form"},
                            {"gram", gram_json},
                            {"diagonal", t3.to_string()},
                            {"three_is_square", three.is_one()},
                            {"isometric_to_1_1_-1", is_isometric(t3, reference)}});

  // (c), (d) every (b, c) with Jacobson norm matching N_C.
  const DiagonalForm dd = pfister(k, {d});
  const DiagonalForm lhs = tensor(dd, t3);
  Json rows = Json::array();
  bool consistent_candidate = false;
  std::size_t matches = 0;
  const auto classes = enumerate_square_classes(k);
  for (const auto& b : classes) {
    for (const auto& cc : classes) {
      const bool norm_match = is_isometric(jacobson_norm(k, d, b, cc), c.norm_form());
      Json row{{"b", b.to_string()}, {"c", cc.to_string()}, {"norm_matches", norm_match}};
      if (norm_match) {
        ++matches;
        const DiagonalForm h(k, {-b, -cc, b * cc});
        const bool iso = is_isometric(lhs, tensor(dd, h));
        // An isometry would make <<d>> (x) <1,-b,-c,bc> = N_C isotropic, hence hyperbolic.
        const bool contradiction = iso && !is_hyperbolic(c.norm_form());
        row["trace_isometric"] = iso;
        row["contradiction"] = contradiction;
        if (iso && !contradiction) consistent_candidate = true;
      }
      rows.push_back(row);
    }
  }
  r.evidence.push_back(Json{{"step", "jacobson_candidates"}, {"matching", matches}, {"rows", rows}});
  detail::add_catalog_note(*k, r.evidence);

  if (only_trivial && !consistent_candidate) {
    r.verdict = "inadmissible";
  } else {
    r.verdict = "admissible";
    r.admissible.push_back(tau.to_string());
  }
  return r;
}

/// Admissibility of any catalog type, including the Galois cubic ones.
inline TypeVerdict type_verdict(const CompositionAlgebra& c, const TorusType& tau) {
  if (tau.cubic != CubicKind::PureCubicGalois) return admits_type_verdict(c, tau);
  if (is_isotropic(c.norm_form())) return {true, "split algebra admits every type"};
  if (tau.quad.is_one()) return {false, "C is not split, so F' must be a field"};
  const Report rep = cubic_obstruction_report(c, tau.quad);
  return {rep.verdict == "admissible", "cubic obstruction: " + rep.verdict};
}

inline Report torus_type_report(const CompositionAlgebra& c) {
  if (c.dim() != 8) throw Error(ErrorCode::PreconditionFailed, "torus types are defined for octonion algebras");
  const FieldRef& k = c.field();
  Report r;
  r.field = k->descriptor();
  r.algebra.push_back(detail::slot_list(c));
  std::size_t count = 0;
  for (const auto& tau : torus_type_catalog(k)) {
    const std::string name = tau.to_string();
    r.catalog.push_back(name);
    const TypeVerdict v = type_verdict(c, tau);
    if (v.admissible) {
      r.admissible.push_back(name);
      ++count;
    }
    r.evidence.push_back(Json{{"type", name}, {"admissible", v.admissible}, {"reason", v.reason}});
  }
  detail::add_catalog_note(*k, r.evidence);
  r.verdict = std::to_string(count) + "/" + std::to_string(r.catalog.size()) + " admissible";
  return r;
}

inline Report compare_torus_systems(const CompositionAlgebra& c1, const CompositionAlgebra& c2) {
  require_same_field(c1.field(), c2.field());
  if (c1.dim() != 8 || c2.dim() != 8) {
    throw Error(ErrorCode::PreconditionFailed, "torus systems are compared for octonion algebras");
  }
  const FieldRef& k = c1.field();
  Report r;
  r.field = k->descriptor();
  r.algebra.push_back(detail::slot_list(c1));
  r.algebra.push_back(detail::slot_list(c2));
  bool equivalent = true;
  for (const auto& tau : torus_type_catalog(k)) {
    const std::string name = tau.to_string();
    r.catalog.push_back(name);
    const TypeVerdict v1 = type_verdict(c1, tau);
    const TypeVerdict v2 = type_verdict(c2, tau);
    r.admissible.push_back(Json{{"type", name}, {"first", v1.admissible}, {"second", v2.admissible}});
    if (v1.admissible != v2.admissible) {
      equivalent = false;
      r.evidence.push_back(Json{{"type", name}, {"first", v1.reason}, {"second", v2.reason}});
    }
  }
  detail::add_catalog_note(*k, r.evidence);
  r.verdict = equivalent ? "equivalent" : "not equivalent";
  return r;
}

}  // namespace wittforge
