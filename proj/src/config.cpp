#include "dyson/config.hpp"

#include <set>
#include <sstream>

#include "dyson/error.hpp"
#include "json.hpp"

namespace dyson {

namespace {

using nlohmann::json;

class Validator {
 public:
  void fail(const std::string& path, const std::string& msg) { errors_.push_back(path + ": " + msg); }
  bool ok() const { return errors_.empty(); }
  std::string message() const {
    std::ostringstream out;
    out << "invalid configuration (" << errors_.size() << (errors_.size() == 1 ? " error" : " errors") << ")";
    for (const auto& e : errors_) out << "\n  " << e;
    return out.str();
  }

  std::optional<Rational> rational(const json& v, const std::string& path) {
    try {
      if (v.is_string()) return parse_rational(v.get<std::string>());
      if (v.is_number_integer()) return Rational(v.get<long>());
    } catch (const std::exception& e) {
      fail(path, e.what());
      return std::nullopt;
    }
    fail(path, "expected a rational as \"p/q\" or an integer");
    return std::nullopt;
  }

  std::optional<int> integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) {
      fail(path, "expected an integer");
      return std::nullopt;
    }
    return v.get<int>();
  }

  std::optional<double> number(const json& v, const std::string& path) {
    if (!v.is_number()) {
      fail(path, "expected a number");
      return std::nullopt;
    }
    return v.get<double>();
  }

  std::vector<double> numbers(const json& v, const std::string& path) {
    std::vector<double> out;
    if (!v.is_array()) {
      fail(path, "expected an array of numbers");
      return out;
    }
    for (std::size_t i = 0; i < v.size(); ++i)
      if (auto d = number(v[i], path + "[" + std::to_string(i) + "]")) out.push_back(*d);
    return out;
  }

  std::optional<std::pair<double, double>> range(const json& v, const std::string& path) {
    auto r = numbers(v, path);
    if (r.size() != 2 || !(r[0] < r[1])) {
      fail(path, "expected [lo, hi] with lo < hi");
      return std::nullopt;
    }
    return std::pair{r[0], r[1]};
  }

 private:
  std::vector<std::string> errors_;
};

std::optional<LaurentData> mellin_entry(Validator& v, const json& e, const std::string& path, int n) {
  if (e.is_array()) {
    std::vector<Rational> c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (auto r = v.rational(e[i], path + "[" + std::to_string(i) + "]")) c.push_back(*r);
    if (c.size() != e.size()) return std::nullopt;
    if (c.empty()) {
      v.fail(path, "empty Laurent coefficient list");
      return std::nullopt;
    }
    LaurentData d(std::move(c));
    if (d.order() < n) {
      v.fail(path, "Laurent order " + std::to_string(d.order()) + " is below the truncation " + std::to_string(n) +
                       " (need f_{-1}..f_" + std::to_string(n) + ")");
      return std::nullopt;
    }
    return d;
  }
  if (e.is_object()) {
    if (!e.contains("scale") || !e.contains("poles") || !e["poles"].is_array()) {
      v.fail(path, "pole form needs \"scale\" and an array \"poles\"");
      return std::nullopt;
    }
    auto scale = v.rational(e["scale"], path + ".scale");
    std::vector<Rational> poles;
    bool good = scale.has_value();
    for (std::size_t i = 0; i < e["poles"].size(); ++i) {
      auto p = v.rational(e["poles"][i], path + ".poles[" + std::to_string(i) + "]");
      if (!p) {
        good = false;
        continue;
      }
      if (sgn(*p) == 0) {
        v.fail(path + ".poles[" + std::to_string(i) + "]", "pole at the origin; rho = 0 must stay a simple pole");
        good = false;
        continue;
      }
      poles.push_back(*p);
    }
    if (!good) return std::nullopt;
    return laurent_from_poles(*scale, poles, n);
  }
  v.fail(path, "expected a Laurent coefficient array or {\"scale\", \"poles\"}");
  return std::nullopt;
}

void parse_ode(Validator& v, const json& o, Config& cfg) {
  OdeSettings out;
  auto& spec = out.spec;
  const std::string base = "$.ode";
  if (!o.is_object()) {
    v.fail(base, "expected an object");
    return;
  }
  const std::string mode = o.value("mode", std::string("single"));
  if (mode != "single" && mode != "system") v.fail(base + ".mode", "expected \"single\" or \"system\"");
  spec.mode = mode == "system" ? ode::OdeSpec::Mode::system : ode::OdeSpec::Mode::single;
  if (o.contains("m"))
    if (auto m = v.number(o["m"], base + ".m")) {
      if (*m == 0.0) v.fail(base + ".m", "m must be nonzero");
      spec.m = *m;
    }
  spec.s.clear();
  if (o.contains("s")) {
    if (o["s"].is_array()) {
      for (std::size_t i = 0; i < o["s"].size(); ++i)
        if (auto s = v.integer(o["s"][i], base + ".s[" + std::to_string(i) + "]")) spec.s.push_back(*s);
    } else if (auto s = v.integer(o["s"], base + ".s")) {
      spec.s.push_back(*s);
    }
  } else {
    v.fail(base + ".s", "missing");
  }
  for (std::size_t i = 0; i < spec.s.size(); ++i)
    if (spec.s[i] == 0) v.fail(base + ".s", "s = 0 is the linear case, which is excluded");

  spec.p.clear();
  if (!o.contains("P")) {
    v.fail(base + ".P", "missing");
  } else if (spec.mode == ode::OdeSpec::Mode::single) {
    spec.p.push_back(v.numbers(o["P"], base + ".P"));
  } else if (o["P"].is_array()) {
    for (std::size_t i = 0; i < o["P"].size(); ++i)
      spec.p.push_back(v.numbers(o["P"][i], base + ".P[" + std::to_string(i) + "]"));
  } else {
    v.fail(base + ".P", "system mode expects one coefficient array per residue");
  }
  const std::size_t dim = spec.mode == ode::OdeSpec::Mode::single ? 1 : spec.s.size();
  if (spec.s.size() != dim) v.fail(base + ".s", "single mode takes exactly one exponent");
  if (spec.p.size() != dim) v.fail(base + ".P", "expected " + std::to_string(dim) + " coefficient arrays");
  if (spec.mode == ode::OdeSpec::Mode::system) spec.g_min = -1.0;

  if (o.contains("xrange"))
    if (auto r = v.range(o["xrange"], base + ".xrange")) std::tie(spec.x_min, spec.x_max) = *r;
  if (o.contains("grange"))
    if (auto r = v.range(o["grange"], base + ".grange")) std::tie(spec.g_min, spec.g_max) = *r;
  if (o.contains("x0"))
    if (auto d = v.number(o["x0"], base + ".x0")) out.x0 = *d;
  if (o.contains("x_probe"))
    if (auto d = v.number(o["x_probe"], base + ".x_probe")) out.x_probe = *d;
  if (o.contains("slice_x"))
    if (auto d = v.number(o["slice_x"], base + ".slice_x")) out.slice_x = *d;
  if (o.contains("bracket")) out.bracket = v.range(o["bracket"], base + ".bracket");
  if (!(out.x0 > 0.0)) v.fail(base + ".x0", "must be positive");
  if (!(out.x_probe > out.x0)) v.fail(base + ".x_probe", "must exceed x0");
  cfg.ode = std::move(out);
}

void parse_hopf(Validator& v, const json& h, Config& cfg) {
  HopfSettings out;
  const std::string base = "$.hopf";
  if (!h.is_object()) {
    v.fail(base, "expected an object");
    return;
  }
  auto int_list = [&](const char* key, std::vector<int>& dst) {
    if (!h.contains(key)) return;
    dst.clear();
    if (!h[key].is_array()) {
      v.fail(base + "." + key, "expected an array of integers");
      return;
    }
    for (std::size_t i = 0; i < h[key].size(); ++i)
      if (auto x = v.integer(h[key][i], base + "." + key + "[" + std::to_string(i) + "]")) dst.push_back(*x);
  };
  if (h.contains("max_nodes"))
    if (auto n = v.integer(h["max_nodes"], base + ".max_nodes")) out.max_nodes = *n;
  if (h.contains("max_k"))
    if (auto n = v.integer(h["max_k"], base + ".max_k")) out.max_k = *n;
  int_list("decorations", out.decorations);
  int_list("s", out.s);
  if (out.max_nodes < 0 || out.max_nodes > 9) v.fail(base + ".max_nodes", "expected 0..9");
  if (out.max_k < 0 || out.max_k > 8) v.fail(base + ".max_k", "expected 0..8");
  for (int s : out.s)
    if (s == 0) v.fail(base + ".s", "s = 0 is the linear case, which is excluded");
  cfg.hopf = std::move(out);
}

}  // namespace

Config validate_config(std::string_view json_text, std::optional<int> truncation_override) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid configuration (1 error)\n  $: malformed JSON: ") + e.what());
  }
  Validator v;
  Config cfg;
  if (!doc.is_object()) {
    v.fail("$", "top level must be an object");
    throw ConfigError(v.message());
  }

  const bool has_mellin = doc.contains("mellin");
  const bool has_p = doc.contains("p_series");
  const bool has_theory_keys = doc.contains("s") || doc.contains("residues") || doc.contains("truncation");
  if (!has_mellin && !has_p && (has_theory_keys || (!doc.contains("ode") && !doc.contains("hopf"))))
    v.fail("$", "missing \"mellin\" and \"p_series\": one source of primitive data is required");

  if (has_mellin || has_p) {
    // Residue names: explicit list, else the keys of "s", else a single "G".
    if (doc.contains("residues")) {
      if (!doc["residues"].is_array() || doc["residues"].empty()) {
        v.fail("$.residues", "expected a nonempty array of names");
      } else {
        std::set<std::string> seen;
        for (std::size_t i = 0; i < doc["residues"].size(); ++i) {
          const auto& r = doc["residues"][i];
          if (!r.is_string()) {
            v.fail("$.residues[" + std::to_string(i) + "]", "expected a string");
            continue;
          }
          if (!seen.insert(r.get<std::string>()).second)
            v.fail("$.residues[" + std::to_string(i) + "]", "duplicate residue '" + r.get<std::string>() + "'");
          cfg.residues.push_back(r.get<std::string>());
        }
      }
    } else if (doc.contains("s") && doc["s"].is_object()) {
      for (const auto& [k, _] : doc["s"].items()) cfg.residues.push_back(k);
    } else {
      cfg.residues.push_back("G");
    }

    if (!doc.contains("s")) {
      v.fail("$.s", "missing");
    } else {
      for (const auto& name : cfg.residues) {
        const json* sv = nullptr;
        std::string path = "$.s";
        if (doc["s"].is_object()) {
          path += "." + name;
          if (doc["s"].contains(name)) sv = &doc["s"][name];
        } else if (cfg.residues.size() == 1) {
          sv = &doc["s"];
        }
        if (!sv) {
          v.fail(path, "missing exponent for residue '" + name + "'");
          cfg.s.push_back(1);
          continue;
        }
        auto s = v.integer(*sv, path);
        if (s && *s == 0) v.fail(path, "s = 0 is the linear case, which is excluded; |s| >= 1 is required");
        cfg.s.push_back(s.value_or(1));
      }
    }

    if (truncation_override) {
      cfg.truncation = *truncation_override;
    } else if (!doc.contains("truncation")) {
      v.fail("$.truncation", "missing");
    } else if (auto n = v.integer(doc["truncation"], "$.truncation")) {
      cfg.truncation = *n;
    }
    if (cfg.truncation < 1) v.fail("$.truncation", "must be at least 1");

    OperatorConvention convention = OperatorConvention::rg;
    if (doc.contains("convention")) {
      try {
        convention = parse_convention(doc["convention"].is_string() ? doc["convention"].get<std::string>() : "");
      } catch (const std::exception& e) {
        v.fail("$.convention", e.what());
      }
    }

    if (has_mellin && cfg.truncation >= 1) {
      TheorySpec spec;
      spec.truncation = cfg.truncation;
      spec.convention = convention;
      const json& m = doc["mellin"];
      if (!m.is_object()) v.fail("$.mellin", "expected an object keyed by residue");
      for (std::size_t r = 0; r < cfg.residues.size(); ++r) {
        ResidueSpec res{cfg.residues[r], r < cfg.s.size() ? cfg.s[r] : 1, {}};
        const std::string rpath = "$.mellin." + res.name;
        if (m.is_object() && m.contains(res.name)) {
          const json& byk = m[res.name];
          if (!byk.is_object()) {
            v.fail(rpath, "expected an object keyed by loop order");
            spec.residues.push_back(std::move(res));
            continue;
          }
          for (const auto& [key, list] : byk.items()) {
            const std::string kpath = rpath + "." + key;
            int k = 0;
            try {
              std::size_t used = 0;
              k = std::stoi(key, &used);
              if (used != key.size()) k = 0;
            } catch (const std::exception&) {
            }
            if (k < 1) {
              v.fail(kpath, "loop order must be a positive integer");
              continue;
            }
            if (!list.is_array()) {
              v.fail(kpath, "expected an array of primitives");
              continue;
            }
            for (std::size_t i = 0; i < list.size(); ++i)
              if (auto d = mellin_entry(v, list[i], kpath + "[" + std::to_string(i) + "]", cfg.truncation))
                res.primitives[k].push_back(Kernel{std::move(*d), 0});
          }
        } else if (m.is_object()) {
          v.fail(rpath, "missing Mellin data for residue '" + res.name + "'");
        }
        spec.residues.push_back(std::move(res));
      }
      cfg.theory = std::move(spec);
    }

    if (has_p && cfg.truncation >= 1) {
      PrimitiveSeries p;
      p.residues = cfg.residues;
      p.truncation = cfg.truncation;
      p.provenance = Provenance::direct;
      const json& ps = doc["p_series"];
      for (const auto& name : cfg.residues) {
        std::vector<Rational> row(static_cast<std::size_t>(cfg.truncation) + 1, Rational(0));
        const json* list = nullptr;
        std::string path = "$.p_series";
        if (ps.is_object()) {
          path += "." + name;
          if (ps.contains(name)) list = &ps[name];
        } else if (cfg.residues.size() == 1) {
          list = &ps;
        }
        if (!list || !list->is_array()) {
          v.fail(path, "expected an array p(1), p(2), ... for residue '" + name + "'");
        } else {
          for (std::size_t i = 0; i < list->size() && i < static_cast<std::size_t>(cfg.truncation); ++i)
            if (auto r = v.rational((*list)[i], path + "[" + std::to_string(i) + "]")) row[i + 1] = *r;
        }
        p.p.push_back(std::move(row));
      }
      cfg.primitives = std::move(p);
    }
  }

  if (doc.contains("ode")) parse_ode(v, doc["ode"], cfg);
  if (doc.contains("hopf")) parse_hopf(v, doc["hopf"], cfg);

  if (!v.ok()) throw ConfigError(v.message());
  return cfg;
}

}  // namespace dyson
