#pragma once

// wittforge command line: parses the field/form/algebra notation, runs one
// library operation and prints a deterministic result. Exit codes: 0 success,
// 1 domain error (or oracle disagreement), 2 usage or parse error.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wittforge/arith_q.hpp"
#include "wittforge/comp_alg.hpp"
#include "wittforge/dsl.hpp"
#include "wittforge/error.hpp"
#include "wittforge/fields.hpp"
#include "wittforge/form.hpp"
#include "wittforge/g2_tori.hpp"
#include "wittforge/oracle.hpp"
#include "wittforge/qform.hpp"

namespace wittforge::cli {

/// Argument-shape problems found after parsing; reported like parse errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OracleResult {
  bool available = false;
  bool agrees = true;
  std::string detail;
};

namespace detail {

inline std::optional<std::int64_t> small_int(const BigInt& v) {
  if (v > BigInt(INT64_MAX / 4) || v < BigInt(-(INT64_MAX / 4))) return std::nullopt;
  return v.convert_to<std::int64_t>();
}

inline std::string join(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return "(" + s + ")";
}

inline std::string places_string(const std::set<Place>& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& v : s) {
    out += (first ? "" : ", ") + v.to_string();
    first = false;
  }
  return out + "}";
}

}  // namespace detail

/// Independent recomputation of an isotropy verdict by brute-force search.
inline OracleResult isotropy_oracle(const DiagonalForm& f, bool verdict) {
  OracleResult r;
  const FieldTower& k = *f.field();
  if (f.dim() > 4) {
    r.detail = "unavailable for dimension > 4";
    return r;
  }
  if (k.base() == BaseKind::Rationals && !k.is_laurent()) {
    std::vector<std::int64_t> ints;
    for (const auto& a : f.entries()) {
      auto v = detail::small_int(a.rational_base_value());
      if (!v) {
        r.detail = "unavailable: entry too large";
        return r;
      }
      ints.push_back(*v);
    }
    r.available = true;
    if (verdict) {
      auto w = oracle::small_witness(ints, 10000);
      r.agrees = w.has_value();
      r.detail = w ? "integer witness " + detail::join(*w) : "no integer witness found up to height 10^4";
    } else {
      auto place = local_obstruction(f);
      const bool local = place && !oracle::local_isotropic(ints, place->prime);
      const bool none = ints.size() < 2 || !oracle::integer_witness(ints, ints.size() == 4 ? 64 : 300);
      r.agrees = local && none;
      r.detail = place ? "anisotropic at " + place->to_string() + " by p-adic search" +
                             (local ? "" : " FAILED") + (none ? "" : "; integer witness found")
                       : "no obstructing place reported";
    }
    return r;
  }
  if (k.base() == BaseKind::Real && !k.is_laurent()) {
    std::vector<std::int64_t> ints;
    for (const auto& a : f.entries()) ints.push_back(a.base_bit() ? -1 : 1);
    r.available = true;
    r.agrees = oracle::local_isotropic(ints, 0) == verdict;
    r.detail = "sign check";
    return r;
  }
  if (k.base() != BaseKind::Finite || k.degree() != 1) {
    r.detail = "unavailable over " + k.descriptor();
    return r;
  }
  const auto p = static_cast<std::int64_t>(k.characteristic());
  const auto u = static_cast<std::int64_t>(k.nonresidue());
  r.available = true;
  if (k.num_vars() <= 1) {
    std::vector<std::pair<std::int64_t, int>> entries;
    for (const auto& a : f.entries()) entries.emplace_back(a.base_bit() ? u : 1, k.num_vars() ? a.exponent(0) : 0);
    const bool o = oracle::laurent_isotropic(static_cast<std::uint64_t>(p), entries, k.num_vars() ? 4 : 1);
    r.agrees = o == verdict;
    r.detail = k.num_vars() ? "primitive zero search modulo t^4" : "exhaustive search over F_p";
    return r;
  }
  std::vector<oracle::MonomialEntry> entries;
  for (const auto& a : f.entries()) {
    std::vector<int> e(k.num_vars());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.exponent(i);
    entries.push_back({a.base_bit() ? u : 1, e});
  }
  const bool found = oracle::monomial_zero_search(static_cast<std::uint64_t>(p), entries).has_value();
  r.agrees = found == verdict;
  r.detail = found ? "exact zero with monomial coordinates" : "no zero with monomial coordinates";
  return r;
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"wittforge: quadratic forms, composition algebras and G2 torus types"};
    app.require_subcommand(1, 1);
    app.set_help_all_flag("--help-all", "Show help for all subcommands");

    std::string field;
    std::string form;
    std::string delta;
    std::string slots;
    std::string slots2;
    std::string x_text;
    std::string y_text;
    std::string q1;
    std::string q2;
    std::string d_text;
    bool json = false;
    bool use_oracle = false;

    const auto common = [&](CLI::App* s) {
      s->add_option("--field", field, "field descriptor, e.g. F13((s))((t))")->required();
      s->add_flag("--json", json, "machine-readable output");
      s->add_flag("--oracle", use_oracle, "cross-check with a brute-force search");
    };

    auto* iso = app.add_subcommand("qf-isotropy", "decide isotropy of a diagonal or Pfister form");
    common(iso);
    iso->add_option("--form", form, "form literal [a,b,...] or <<a,b,...>>")->required();

    auto* witt = app.add_subcommand("qf-witt", "Witt index and anisotropic kernel");
    common(witt);
    witt->add_option("--form", form, "form literal")->required();

    auto* split = app.add_subcommand("qf-pfister-split", "splitting of a Pfister form by k(sqrt(delta))");
    common(split);
    split->add_option("--form", form, "Pfister literal <<a,b,...>>")->required();
    split->add_option("--delta", delta, "square class delta")->required();

    auto* build = app.add_subcommand("alg-build", "build a Cayley-Dickson algebra and multiply elements");
    common(build);
    build->add_option("--slots", slots, "slot list a,b,...")->required();
    build->add_option("--x", x_text, "element (c_0, c_1, ...)");
    build->add_option("--y", y_text, "element (c_0, c_1, ...)");

    auto* asplit = app.add_subcommand("alg-split", "is the composition algebra split");
    common(asplit);
    asplit->add_option("--slots", slots, "slot list a,b,...")->required();

    auto* genus = app.add_subcommand("alg-genus", "compare genera of two quaternion algebras over Q");
    common(genus);
    genus->add_option("--q1", q1, "slots a,b of the first algebra")->required();
    genus->add_option("--q2", q2, "slots a,b of the second algebra")->required();

    auto* types = app.add_subcommand("g2-types", "admissible maximal torus types of Aut(C)");
    common(types);
    types->add_option("--octonion", slots, "slots a,b,c")->required();

    auto* compare = app.add_subcommand("g2-compare", "compare torus type systems of two octonion algebras");
    common(compare);
    compare->add_option("--octonion", slots, "slots a,b,c of the first algebra")->required();
    compare->add_option("--octonion2", slots2, "slots a,b,c of the second algebra")->required();

    auto* cubic = app.add_subcommand("g2-cubic-obstruction", "replay the Galois cubic obstruction");
    common(cubic);
    cubic->add_option("--octonion", slots, "slots a,b,c")->required();
    cubic->add_option("--d", d_text, "quadratic class d")->required();

    try {
      std::vector<std::string> rev(args.rbegin(), args.rend());
      app.parse(rev);
    } catch (const CLI::CallForHelp&) {
      out_ << app.help();
      return 0;
    } catch (const CLI::CallForAllHelp&) {
      out_ << app.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (const CLI::ParseError& e) {
      err_ << "usage error: " << e.what() << "\n";
      return 2;
    }

    try {
      const FieldRef k = dsl::parse_field(field);
      if (iso->parsed()) return qf_isotropy(k, form, json, use_oracle);
      if (witt->parsed()) return qf_witt(k, form, json, use_oracle);
      if (split->parsed()) return qf_pfister_split(k, form, delta, json);
      if (build->parsed()) return alg_build(k, slots, x_text, y_text, json);
      if (asplit->parsed()) return alg_split(k, slots, json, use_oracle);
      if (genus->parsed()) return alg_genus(k, q1, q2, json, use_oracle);
      if (types->parsed()) return g2_types(k, slots, json);
      if (compare->parsed()) return g2_compare(k, slots, slots2, json);
      if (cubic->parsed()) return g2_cubic(k, slots, d_text, json);
    } catch (const dsl::ParseError& e) {
      err_ << e.annotated() << "\n";
      return 2;
    } catch (const UsageError& e) {
      err_ << "usage error: " << e.what() << "\n";
      return 2;
    } catch (const Error& e) {
      err_ << "error: " << e.what() << "\n";
      return 1;
    }
    return 2;
  }

 private:
  void emit(const Json& j) { out_ << j.dump(2) << "\n"; }

  int report_oracle(const OracleResult& o, Json* j) {
    if (j) {
      (*j)["oracle"] = Json{{"available", o.available}, {"agrees", o.agrees}, {"detail", o.detail}};
    } else {
      out_ << "oracle: " << (!o.available ? "unavailable" : o.agrees ? "agrees" : "DISAGREES") << " (" << o.detail
           << ")\n";
    }
    return o.available && !o.agrees ? 1 : 0;
  }

  int qf_isotropy(const FieldRef& k, const std::string& text, bool json, bool use_oracle) {
    const DiagonalForm f = dsl::parse_form(k, text);
    if (f.dim() == 0) throw UsageError("the form must have dimension >= 1");
    const bool v = is_isotropic(f);
    Json j{{"field", k->descriptor()}, {"form", f.to_string()}, {"isotropic", v}};
    if (k->base() == BaseKind::Rationals && !k->is_laurent() && !v) {
      auto place = local_obstruction(f);
      j["obstruction"] = place ? place->to_string() : "none";
    }
    if (!json) out_ << (v ? "isotropic" : "anisotropic") << "\n";
    int rc = 0;
    if (use_oracle) rc = report_oracle(isotropy_oracle(f, v), json ? &j : nullptr);
    if (json) emit(j);
    return rc;
  }

  int qf_witt(const FieldRef& k, const std::string& text, bool json, bool use_oracle) {
    const DiagonalForm f = dsl::parse_form(k, text);
    const WittDecomposition w = witt_decompose(f);
    Json j{{"field", k->descriptor()}, {"form", f.to_string()}, {"witt_index", w.witt_index},
           {"kernel_dim", w.kernel_dim}, {"hyperbolic", w.is_hyperbolic()}};
    std::string kernel;
    if (w.kernel) {
      kernel = w.kernel->to_string();
    } else if (w.kernel_invariants) {
      const auto& inv = *w.kernel_invariants;
      kernel = "dim " + std::to_string(inv.dim) + ", disc " + inv.disc.to_string() + ", signature (" +
               std::to_string(inv.positives) + "," + std::to_string(inv.negatives) + "), hasse -1 at " +
               detail::places_string(inv.hasse_minus_places());
    }
    j["kernel"] = kernel;
    if (!json) {
      out_ << "witt_index: " << w.witt_index << "\n";
      out_ << "kernel: " << kernel << "\n";
    }
    int rc = 0;
    if (use_oracle) {
      OracleResult o;
      if (w.kernel && w.kernel->dim() > 0) {
        o = isotropy_oracle(*w.kernel, false);
        o.detail = "kernel: " + o.detail;
      } else {
        o.detail = "no explicit nonzero kernel to check";
      }
      rc = report_oracle(o, json ? &j : nullptr);
    }
    if (json) emit(j);
    return rc;
  }

  int qf_pfister_split(const FieldRef& k, const std::string& text, const std::string& delta_text, bool json) {
    const DiagonalForm phi = dsl::parse_form(k, text);
    if (!phi.is_pfister()) throw Error(ErrorCode::NotPfister, "expected a Pfister literal <<...>>");
    const SquareClass delta = dsl::parse_class(k, delta_text);
    const bool s = splits_over_quadratic(phi, delta);
    Json j{{"field", k->descriptor()}, {"form", phi.slots_string()}, {"delta", delta.to_string()}, {"splits", s}};
    std::string witness;
    if (s && k->finite_square_classes()) {
      const auto w = pfister_slot_witness(phi, delta);
      witness = pfister(k, w).slots_string();
      j["witness"] = witness;
    }
    if (json) {
      emit(j);
    } else {
      out_ << (s ? "splits" : "does not split") << "\n";
      if (!witness.empty()) out_ << "witness: " << witness << "\n";
    }
    return 0;
  }

  AlgebraRef algebra(const FieldRef& k, const std::string& text, std::optional<std::size_t> arity = std::nullopt) {
    const auto s = dsl::parse_slots(k, text);
    if (arity && s.size() != *arity) {
      throw UsageError("expected " + std::to_string(*arity) + " slots, got " + std::to_string(s.size()));
    }
    return CompositionAlgebra::from_slots(k, s);
  }

  int alg_build(const FieldRef& k, const std::string& slots, const std::string& xs, const std::string& ys,
                bool json) {
    const AlgebraRef a = algebra(k, slots);
    Json j{{"field", k->descriptor()}, {"slots", a->slots_string()}, {"dim", a->dim()},
           {"norm", a->norm_form().to_string()}};
    if (!json) {
      out_ << "dim: " << a->dim() << "\n";
      out_ << "norm: " << a->norm_form().to_string() << "\n";
    }
    if (!xs.empty()) {
      const AlgebraElement x(a, dsl::parse_element_coords(k, xs));
      j["x"] = x.to_string();
      j["norm_x"] = norm(x).to_string();
      if (!json) out_ << "N(x): " << norm(x).to_string() << "\n";
      if (!ys.empty()) {
        const AlgebraElement y(a, dsl::parse_element_coords(k, ys));
        const AlgebraElement xy = x * y;
        const LaurentPoly defect = composition_defect(*a, x, y);
        j["y"] = y.to_string();
        j["xy"] = xy.to_string();
        j["defect"] = defect.to_string();
        if (!json) {
          out_ << "xy: " << xy.to_string() << "\n";
          out_ << "N(xy) - N(x)N(y): " << defect.to_string() << "\n";
        }
      }
    } else if (!ys.empty()) {
      throw UsageError("--y needs --x");
    }
    if (json) emit(j);
    return 0;
  }

  int alg_split(const FieldRef& k, const std::string& slots, bool json, bool use_oracle) {
    const AlgebraRef a = algebra(k, slots);
    const bool s = is_split(*a);
    Json j{{"field", k->descriptor()}, {"slots", a->slots_string()}, {"split", s}};
    if (!json) out_ << (s ? "split" : "division") << "\n";
    int rc = 0;
    if (use_oracle) rc = report_oracle(isotropy_oracle(a->norm_form(), s), json ? &j : nullptr);
    if (json) emit(j);
    return rc;
  }

  int alg_genus(const FieldRef& k, const std::string& q1, const std::string& q2, bool json, bool use_oracle) {
    if (k->base() != BaseKind::Rationals || k->is_laurent()) {
      throw Error(ErrorCode::UnsupportedField, "genus comparison is implemented over Q");
    }
    const auto a = dsl::parse_slots(k, q1);
    const auto b = dsl::parse_slots(k, q2);
    if (a.size() != 2 || b.size() != 2) throw UsageError("each quaternion algebra needs exactly two slots");
    const auto ra = ramification_set(a[0], a[1]);
    const auto rb = ramification_set(b[0], b[1]);
    const bool same = ra == rb;
    Json j{{"field", k->descriptor()},
           {"q1", a[0].to_string() + "," + a[1].to_string()},
           {"q2", b[0].to_string() + "," + b[1].to_string()},
           {"ramification_q1", detail::places_string(ra)},
           {"ramification_q2", detail::places_string(rb)},
           {"same_genus", same}};
    if (!json) {
      out_ << (same ? "same genus" : "different genus") << "\n";
      out_ << "ramification q1: " << detail::places_string(ra) << "\n";
      out_ << "ramification q2: " << detail::places_string(rb) << "\n";
    }
    int rc = 0;
    if (use_oracle) {
      OracleResult o;
      o.available = true;
      for (const auto* pair : {&a, &b}) {
        const auto x = detail::small_int((*pair)[0].rational_base_value());
        const auto y = detail::small_int((*pair)[1].rational_base_value());
        if (!x || !y) {
          o.available = false;
          o.detail = "unavailable: slot too large";
          break;
        }
        std::set<Place> brute;
        for (const auto& v : finite_support({(*pair)[0], (*pair)[1]})) {
          if (oracle::hilbert_symbol(*x, *y, v.prime) == -1) brute.insert(v);
        }
        if (brute != ramification_set((*pair)[0], (*pair)[1])) o.agrees = false;
      }
      if (o.available) o.detail = "Hilbert symbols by local solvability search";
      rc = report_oracle(o, json ? &j : nullptr);
    }
    if (json) emit(j);
    return rc;
  }

  int g2_types(const FieldRef& k, const std::string& slots, bool json) {
    const AlgebraRef c = algebra(k, slots, 3);
    const Report r = torus_type_report(*c);
    if (json) {
      out_ << r.serialize() << "\n";
      return 0;
    }
    out_ << r.verdict << "\n";
    for (const auto& e : r.evidence) {
      if (e.contains("type")) {
        out_ << e["type"].get<std::string>() << ": " << (e["admissible"].get<bool>() ? "admissible" : "inadmissible")
             << " (" << e["reason"].get<std::string>() << ")\n";
      } else if (e.contains("note")) {
        out_ << "note: " << e["note"].get<std::string>() << "\n";
      }
    }
    return 0;
  }

  int g2_compare(const FieldRef& k, const std::string& s1, const std::string& s2, bool json) {
    const AlgebraRef c1 = algebra(k, s1, 3);
    const AlgebraRef c2 = algebra(k, s2, 3);
    const Report r = compare_torus_systems(*c1, *c2);
    if (json) {
      out_ << r.serialize() << "\n";
      return 0;
    }
    out_ << r.verdict << "\n";
    for (const auto& e : r.evidence) {
      if (e.contains("type")) {
        out_ << e["type"].get<std::string>() << ": first " << e["first"].get<std::string>() << "; second "
             << e["second"].get<std::string>() << "\n";
      } else if (e.contains("note")) {
        out_ << "note: " << e["note"].get<std::string>() << "\n";
      }
    }
    return 0;
  }

  int g2_cubic(const FieldRef& k, const std::string& slots, const std::string& d_text, bool json) {
    const AlgebraRef c = algebra(k, slots, 3);
    const SquareClass d = dsl::parse_class(k, d_text);
    const Report r = cubic_obstruction_report(*c, d);
    if (json) {
      out_ << r.serialize() << "\n";
      return 0;
    }
    out_ << r.verdict << "\n";
    for (const auto& e : r.evidence) {
      if (!e.contains("step")) continue;
      const std::string step = e["step"].get<std::string>();
      if (step == "lambda_reduction") {
        out_ << "lambda reduction: only square lambda = " << (e["only_square_lambda"].get<bool>() ? "yes" : "no")
             << "\n";
      } else if (step == "trace_form") {
        out_ << "trace form gram: " << e["gram"].dump() << "\n";
        out_ << "trace form diagonal: " << e["diagonal"].get<std::string>() << "\n";
      } else if (step == "jacobson_candidates") {
        std::size_t contradictions = 0;
        for (const auto& row : e["rows"]) {
          if (row.contains("contradiction") && row["contradiction"].get<bool>()) ++contradictions;
        }
        out_ << "jacobson candidates: " << e["matching"].get<std::size_t>() << " matching, " << contradictions
             << " contradictory\n";
      }
    }
    return 0;
  }

  std::ostream& out_;
  std::ostream& err_;
};

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return Runner(out, err).run(args);
}

}  // namespace wittforge::cli
