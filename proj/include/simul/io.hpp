#pragma once
/*
 * io.hpp - JSON ingestion of operators, states and classical systems, and
 * JSON serialization of verification reports.
 *
 *   operator  {"dim": n, "re": [[...]], "im": [[...]]}   row-major
 *   state     {"re": [...], "im": [...]}                  normalized on load
 *   classical {"system": "free"|"constant_force"|"harmonic",
 *              "m": ..., "F": [x, y, z], "nu": ...}
 *
 * Every validation failure raises ParseError carrying a dotted field path.
 */

#include <json.hpp>
#include <set>
#include <string>
#include <vector>

#include "simul/classical.hpp"
#include "simul/projective.hpp"
#include "simul/simultaneity.hpp"
#include "simul/spectral.hpp"

namespace simul::io {

using Json = nlohmann::json;

inline std::string join_path(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

inline void reject_unknown(const Json& obj, const std::string& path,
                           std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ParseError(path, "expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : obj.items()) {
    if (!ok.count(item.key())) {
      throw ParseError(join_path(path, item.key()), "unknown field");
    }
  }
}

inline double read_number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(path, "expected a finite number");
  return v;
}

inline std::vector<double> read_numbers(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(read_number(j[k], path + "[" + std::to_string(k) + "]"));
  }
  return out;
}

inline HermitianOperator hermitian_from_json(const Json& j,
                                             const std::string& path = "") {
  reject_unknown(j, path, {"dim", "re", "im"});
  for (const char* key : {"dim", "re"}) {
    if (!j.contains(key)) throw ParseError(join_path(path, key), "missing field");
  }
  const Json& jd = j.at("dim");
  if (!jd.is_number_integer() || jd.get<long>() < 1) {
    throw ParseError(join_path(path, "dim"), "expected a positive integer");
  }
  const auto n = static_cast<Eigen::Index>(jd.get<long>());
  CMatrix m = CMatrix::Zero(n, n);
  for (const char* key : {"re", "im"}) {
    if (!j.contains(key)) continue;  // "im" defaults to zero
    const std::string p = join_path(path, key);
    const Json& rows = j.at(key);
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n) {
      throw ParseError(p, "expected " + std::to_string(n) + " rows");
    }
    for (Eigen::Index r = 0; r < n; ++r) {
      const std::string rp = p + "[" + std::to_string(r) + "]";
      const auto vals = read_numbers(rows[static_cast<std::size_t>(r)], rp);
      if (static_cast<Eigen::Index>(vals.size()) != n) {
        throw ParseError(rp, "expected " + std::to_string(n) + " entries");
      }
      for (Eigen::Index c = 0; c < n; ++c) {
        const double v = vals[static_cast<std::size_t>(c)];
        if (key[0] == 'r') {
          m(r, c).real(v);
        } else {
          m(r, c).imag(v);
        }
      }
    }
  }
  try {
    return HermitianOperator(std::move(m));
  } catch (const NotHermitian& e) {
    throw ParseError(path, e.what());
  }
}

inline Json to_json(const HermitianOperator& a) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index r = 0; r < a.dim(); ++r) {
    Json rr = Json::array();
    Json ii = Json::array();
    for (Eigen::Index c = 0; c < a.dim(); ++c) {
      rr.push_back(a.matrix()(r, c).real());
      ii.push_back(a.matrix()(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return {{"dim", a.dim()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline PureState state_from_json(const Json& j, Eigen::Index expected_dim,
                                 const std::string& path = "") {
  reject_unknown(j, path, {"re", "im"});
  if (!j.contains("re")) throw ParseError(join_path(path, "re"), "missing field");
  const auto re = read_numbers(j.at("re"), join_path(path, "re"));
  std::vector<double> im(re.size(), 0.0);
  if (j.contains("im")) im = read_numbers(j.at("im"), join_path(path, "im"));
  if (im.size() != re.size()) {
    throw ParseError(join_path(path, "im"), "length differs from re");
  }
  if (static_cast<Eigen::Index>(re.size()) != expected_dim) {
    throw ParseError(join_path(path, "re"),
                     "expected " + std::to_string(expected_dim) + " components");
  }
  CVector v(expected_dim);
  for (Eigen::Index k = 0; k < expected_dim; ++k) {
    v(k) = Complex(re[static_cast<std::size_t>(k)], im[static_cast<std::size_t>(k)]);
  }
  try {
    return PureState(std::move(v));
  } catch (const Error& e) {
    throw ParseError(path, e.what());
  }
}

inline Json to_json(const PureState& p) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index k = 0; k < p.dim(); ++k) {
    re.push_back(p.vector()(k).real());
    im.push_back(p.vector()(k).imag());
  }
  return {{"re", std::move(re)}, {"im", std::move(im)}};
}

inline ClassicalSystem classical_from_json(const Json& j,
                                           const std::string& path = "") {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  const std::string kp = join_path(path, "system");
  if (!j.contains("system") || !j.at("system").is_string()) {
    throw ParseError(kp, "expected one of free, constant_force, harmonic");
  }
  const std::string kind = j.at("system").get<std::string>();
  auto mass = [&] {
    if (!j.contains("m")) return 1.0;
    const double m = read_number(j.at("m"), join_path(path, "m"));
    if (!(m > 0.0)) throw ParseError(join_path(path, "m"), "mass must be positive");
    return m;
  };
  if (kind == "free") {
    reject_unknown(j, path, {"system", "m"});
    return FreeParticle{mass()};
  }
  if (kind == "constant_force") {
    reject_unknown(j, path, {"system", "m", "F"});
    const std::string fp = join_path(path, "F");
    if (!j.contains("F")) throw ParseError(fp, "missing field");
    const auto f = read_numbers(j.at("F"), fp);
    if (f.size() != 3) throw ParseError(fp, "expected 3 components");
    const Eigen::Vector3d force(f[0], f[1], f[2]);
    if (!(force.norm() > 0.0)) throw ParseError(fp, "force must be non-zero");
    return ConstantForce{mass(), force};
  }
  if (kind == "harmonic") {
    reject_unknown(j, path, {"system", "m", "nu"});
    double nu = 1.0;
    if (j.contains("nu")) {
      nu = read_number(j.at("nu"), join_path(path, "nu"));
      if (!(nu > 0.0)) throw ParseError(join_path(path, "nu"), "frequency must be positive");
    }
    return HarmonicOscillator{mass(), nu};
  }
  throw ParseError(kp, "unknown system '" + kind + "'");
}

inline Json to_json(const ClassicalSystem& sys) {
  Json j = {{"system", system_name(sys)}};
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        j["m"] = s.mass;
        if constexpr (std::is_same_v<S, ConstantForce>) {
          j["F"] = {s.force.x(), s.force.y(), s.force.z()};
        }
        if constexpr (std::is_same_v<S, HarmonicOscillator>) j["nu"] = s.frequency;
      },
      sys);
  return j;
}

inline PhasePoint phase_point_from_json(const Json& j, Eigen::Index dim,
                                        const std::string& path = "") {
  reject_unknown(j, path, {"q", "p"});
  PhasePoint x{RVector::Zero(dim), RVector::Zero(dim)};
  for (const char* key : {"q", "p"}) {
    const std::string kp = join_path(path, key);
    if (!j.contains(key)) throw ParseError(kp, "missing field");
    const auto vals = read_numbers(j.at(key), kp);
    if (static_cast<Eigen::Index>(vals.size()) != dim) {
      throw ParseError(kp, "expected " + std::to_string(dim) + " components");
    }
    RVector& target = key[0] == 'q' ? x.q : x.p;
    for (Eigen::Index k = 0; k < dim; ++k) target(k) = vals[static_cast<std::size_t>(k)];
  }
  return x;
}

inline Json to_json(const PhasePoint& x) {
  return {{"q", std::vector<double>(x.q.data(), x.q.data() + x.q.size())},
          {"p", std::vector<double>(x.p.data(), x.p.data() + x.p.size())}};
}

inline Json to_json(const Counterexample& cx) {
  return {{"condition", cx.condition},
          {"sample_index", cx.sample_index},
          {"seed", cx.seed_first},
          {"partner_seed", cx.seed_second},
          {"tau1", cx.tau1},
          {"tau2", cx.tau2},
          {"observed_distance", cx.observed},
          {"expected", cx.expected_equal ? "equal" : "distinct"},
          {"state", cx.state},
          {"partner", cx.partner}};
}

inline Json to_json(const ConditionResult& r) {
  Json cxs = Json::array();
  for (const auto& cx : r.counterexamples) cxs.push_back(to_json(cx));
  return {{"passed", r.passed},
          {"checks", r.checks},
          {"violations", r.violations},
          {"counterexamples", std::move(cxs)}};
}

inline Json to_json(const VerificationReport& rep) {
  Json j = {{"time_function", rep.time_function},
            {"periodic", rep.periodic},
            {"period", rep.period ? Json(*rep.period) : Json(nullptr)},
            {"passed", rep.passed()},
            {"condition_1", to_json(rep.condition_1)},
            {"condition_2", to_json(rep.condition_2)},
            {"samples_used", rep.samples_used},
            {"seed", rep.seed},
            {"horizon", rep.horizon},
            {"group_law_defect", rep.group_law_defect},
            {"tolerances",
             {{"value", rep.tolerances.value},
              {"level_set", rep.tolerances.level_set},
              {"period_guard", rep.tolerances.period_guard}}}};
  return j;
}

}  // namespace simul::io
