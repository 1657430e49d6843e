#include "subfinsler/config.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

namespace subfinsler {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& item : obj.items())
    if (!keys.count(item.key()))
      throw ConfigError("unknown key \"" + item.key() + "\" in " + where);
}

double get_number(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number())
    throw ConfigError(std::string("key \"") + key + "\" must be a number");
  return obj[key].get<double>();
}

int get_int(const json& obj, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer())
    throw ConfigError(std::string("key \"") + key + "\" must be an integer");
  return obj[key].get<int>();
}

IndicatrixProfile parse_metric(const json& m) {
  if (!m.is_object() || !m.contains("kind"))
    throw ConfigError("\"metric\" must be an object with a \"kind\"");
  const std::string kind = m["kind"].get<std::string>();
  if (kind == "flat") {
    reject_unknown(m, "metric", {"kind"});
    return IndicatrixProfile::flat();
  }
  if (kind == "randers") {
    reject_unknown(m, "metric", {"kind", "B"});
    if (!m.contains("B")) throw ConfigError("randers metric requires \"B\"");
    return IndicatrixProfile::randers(m["B"].get<double>());
  }
  if (kind == "limacon") {
    reject_unknown(m, "metric", {"kind"});
    return IndicatrixProfile::limacon();
  }
  if (kind == "fourier") {
    reject_unknown(m, "metric", {"kind", "cos", "sin"});
    std::vector<double> cs, sn;
    if (m.contains("cos")) cs = m["cos"].get<std::vector<double>>();
    if (m.contains("sin")) sn = m["sin"].get<std::vector<double>>();
    return IndicatrixProfile::fourier(std::move(cs), std::move(sn));
  }
  throw ConfigError("unknown metric kind \"" + kind + "\"");
}

GeodesicState parse_initial(const json& obj, const std::string& where) {
  if (!obj.is_object())
    throw ConfigError("\"initial\" in " + where + " must be an object");
  reject_unknown(obj, where + ".initial",
                 {"x", "y", "z", "theta", "lambda"});
  GeodesicState st;
  st.x = get_number(obj, "x", 0.0);
  st.y = get_number(obj, "y", 0.0);
  st.z = get_number(obj, "z", 0.0);
  st.theta = get_number(obj, "theta", 0.0);
  st.lambda = get_number(obj, "lambda", 0.0);
  return st;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw ConfigError(std::string("JSON parse error: ") + err.what());
  }
  if (!doc.is_object()) throw ConfigError("config root must be an object");
  reject_unknown(doc, "config root",
                 {"metric", "seed", "geodesic", "conjugate", "invariants",
                  "verify", "dido"});
  if (!doc.contains("metric")) throw ConfigError("config requires \"metric\"");

  RunConfig cfg;
  cfg.metric = parse_metric(doc["metric"]);
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned())
      throw ConfigError("\"seed\" must be a nonnegative integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }

  if (doc.contains("geodesic")) {
    const json& g = doc["geodesic"];
    reject_unknown(g, "geodesic", {"initial", "step", "tolerance", "length"});
    GeodesicSection sec;
    if (g.contains("initial")) sec.initial = parse_initial(g["initial"], "geodesic");
    sec.step = get_number(g, "step", sec.step);
    if (g.contains("tolerance"))
      sec.tolerance = g["tolerance"].get<double>();
    sec.length = get_number(g, "length", sec.length);
    cfg.geodesic = sec;
  }
  if (doc.contains("conjugate")) {
    const json& c = doc["conjugate"];
    reject_unknown(c, "conjugate", {"initial", "step", "length"});
    ConjugateSection sec;
    if (c.contains("initial"))
      sec.initial = parse_initial(c["initial"], "conjugate");
    sec.step = get_number(c, "step", sec.step);
    sec.length = get_number(c, "length", sec.length);
    cfg.conjugate = sec;
  }
  if (doc.contains("invariants")) {
    const json& iv = doc["invariants"];
    reject_unknown(iv, "invariants", {"grid"});
    InvariantsSection sec;
    sec.grid = get_int(iv, "grid", sec.grid);
    cfg.invariants = sec;
  }
  if (doc.contains("verify")) {
    const json& v = doc["verify"];
    reject_unknown(v, "verify",
                   {"suite", "points", "fd_step", "tolerance", "constant_I",
                    "case"});
    VerifySection sec;
    if (!v.contains("suite"))
      throw ConfigError("verify section requires \"suite\"");
    sec.suite = v["suite"].get<std::string>();
    sec.points = get_int(v, "points", sec.points);
    sec.fd_step = get_number(v, "fd_step", sec.fd_step);
    sec.tolerance = get_number(v, "tolerance", sec.tolerance);
    sec.constant_I = get_number(v, "constant_I", sec.constant_I);
    if (v.contains("case")) sec.coframe_case = v["case"].get<std::string>();
    cfg.verify = sec;
  }
  if (doc.contains("dido")) {
    const json& d = doc["dido"];
    reject_unknown(d, "dido",
                   {"mode", "initial", "length", "perturbations", "epsilon",
                    "area", "nodes", "max_iterations"});
    DidoSection sec;
    if (d.contains("mode")) sec.mode = d["mode"].get<std::string>();
    if (d.contains("initial")) sec.initial = parse_initial(d["initial"], "dido");
    sec.length = get_number(d, "length", sec.length);
    sec.perturbations = get_int(d, "perturbations", sec.perturbations);
    sec.epsilon = get_number(d, "epsilon", sec.epsilon);
    sec.area = get_number(d, "area", sec.area);
    sec.nodes = get_int(d, "nodes", sec.nodes);
    sec.max_iterations = get_int(d, "max_iterations", sec.max_iterations);
    cfg.dido = sec;
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace subfinsler
