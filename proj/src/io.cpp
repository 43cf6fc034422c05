#include "dqd/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "dqd/error.hpp"

namespace dqd {

using nlohmann::json;

const char* version() noexcept { return DQD_VERSION; }

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  const auto e = s.find_last_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

double to_number(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw Error(ErrorKind::Usage, "cannot parse '" + v + "' as a number for " + key);
  }
}

std::map<std::string, std::string> kv_list(const std::string& s) {
  std::map<std::string, std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::Usage, "expected key=value, got '" + item + "'");
    out[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
  }
  return out;
}

double need(const std::map<std::string, std::string>& kv, const std::string& k) {
  auto it = kv.find(k);
  if (it == kv.end()) throw Error(ErrorKind::Usage, "missing parameter '" + k + "'");
  return to_number(k, it->second);
}

void only_keys(const std::map<std::string, std::string>& kv, std::initializer_list<const char*> keys) {
  for (const auto& [k, v] : kv) {
    bool ok = false;
    for (const char* a : keys) ok = ok || k == a;
    if (!ok) throw Error(ErrorKind::Usage, "unknown state parameter '" + k + "'");
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Usage, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

StateSpec parse_state_spec(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = trim(text.substr(0, colon));
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "bell") {
    const std::string w = trim(rest);
    if (w == "psi-") return spec::Bell{BellKind::PsiMinus};
    if (w == "psi+") return spec::Bell{BellKind::PsiPlus};
    if (w == "phi+") return spec::Bell{BellKind::PhiPlus};
    if (w == "phi-") return spec::Bell{BellKind::PhiMinus};
    throw Error(ErrorKind::Usage, "unknown Bell state '" + w + "' (psi-, psi+, phi+, phi-)");
  }
  if (kind == "raw") {
    const std::string path = trim(rest);
    return spec::Raw{read_raw_state(path), BasisOrdering::Computational};
  }
  const auto kv = kv_list(rest);
  if (kind == "werner") {
    only_keys(kv, {"p"});
    return spec::Werner{need(kv, "p")};
  }
  if (kind == "belldiag") {
    only_keys(kv, {"a", "b", "bi", "order"});
    spec::BellDiagonalAB s;
    s.a = need(kv, "a");
    s.b = cplx(need(kv, "b"), kv.count("bi") ? need(kv, "bi") : 0.0);
    if (auto it = kv.find("order"); it != kv.end()) {
      if (it->second == "phi") s.ordering = BasisOrdering::Phi;
      else if (it->second == "psi") s.ordering = BasisOrdering::Psi;
      else throw Error(ErrorKind::Usage, "order must be psi or phi");
    }
    return s;
  }
  if (kind == "phase") {
    only_keys(kv, {"gamma"});
    return spec::PhaseFamily{need(kv, "gamma")};
  }
  if (kind == "ent") {
    only_keys(kv, {"a", "alpha", "beta"});
    spec::EntFamily s;
    s.a = need(kv, "a");
    s.b = 0.5 - s.a;
    s.alpha = kv.count("alpha") ? need(kv, "alpha") : 0.0;
    s.beta = kv.count("beta") ? need(kv, "beta") : 0.0;
    return s;
  }
  throw Error(ErrorKind::Usage, "unknown state kind '" + kind + "'");
}

Mat4 parse_raw_csv(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    for (char& ch : line)
      if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
    std::stringstream ls(line);
    std::string tok;
    while (ls >> tok) vals.push_back(to_number("raw state entry", tok));
  }
  if (vals.size() != 32)
    throw Error(ErrorKind::InvalidParameter,
                "raw state CSV needs 16 (re, im) pairs, got " + std::to_string(vals.size()) + " numbers");
  Mat4 m;
  for (int k = 0; k < 16; ++k) m(k / 4, k % 4) = cplx(vals[2 * k], vals[2 * k + 1]);
  return m;
}

Mat4 parse_raw_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidParameter, std::string("raw state JSON: ") + e.what());
  }
  if (!j.is_array() || j.size() != 4) throw Error(ErrorKind::InvalidParameter, "raw state JSON must be 4x4");
  Mat4 m;
  for (int i = 0; i < 4; ++i) {
    if (!j[i].is_array() || j[i].size() != 4)
      throw Error(ErrorKind::InvalidParameter, "raw state JSON must be 4x4");
    for (int k = 0; k < 4; ++k) {
      const auto& e = j[i][k];
      if (e.is_number()) {
        m(i, k) = e.get<double>();
      } else if (e.is_array() && e.size() == 2) {
        m(i, k) = cplx(e[0].get<double>(), e[1].get<double>());
      } else {
        throw Error(ErrorKind::InvalidParameter, "raw state JSON entries must be [re, im]");
      }
    }
  }
  return m;
}

Mat4 read_raw_state(const std::string& path) {
  const std::string text = slurp(path);
  const bool is_json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
  return is_json ? parse_raw_json(text) : parse_raw_csv(text);
}

DotParameters RunConfig::dot(double B_field) const {
  return DotParameters(A_total, N_nuclei, I_nuclear, B_field, PhysicalConstants(0.6582119569, 57.883818, g_factor));
}

std::vector<double> RunConfig::grid() const {
  return long_grid ? dqd::long_grid(t_max) : short_grid(t_max, step);
}

EvolveOptions RunConfig::evolve_options() const {
  EvolveOptions o;
  o.pairing = swap_pairing ? UpperPairing::Swapped : UpperPairing::AsPrinted;
  return o;
}

namespace {

json to_json(const RunConfig& c) {
  return json{{"A_total", c.A_total},   {"N_nuclei", c.N_nuclei}, {"I_nuclear", c.I_nuclear},
              {"g_factor", c.g_factor}, {"state", c.state},       {"B", c.B},
              {"t_max", c.t_max},       {"step", c.step},         {"long_grid", c.long_grid},
              {"quadrature", c.quadrature}, {"m_nodes", c.m_nodes}, {"q_nodes", c.q_nodes},
              {"output", c.output},     {"normalize", c.normalize}, {"swap_pairing", c.swap_pairing},
              {"metric", c.metric},     {"window", c.window}};
}

template <class T>
void take(const json& j, const char* key, T& dst) {
  if (j.contains(key)) dst = j.at(key).get<T>();
}

}  // namespace

std::string serialize_config(const RunConfig& c) {
  // max_digits10 keeps doubles exact through the round trip
  return to_json(c).dump();
}

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw Error(ErrorKind::Usage, "config must be a JSON object");
    static const char* known[] = {"A_total", "N_nuclei", "I_nuclear", "g_factor", "state", "B",
                                  "t_max", "step", "long_grid", "quadrature", "m_nodes", "q_nodes",
                                  "output", "normalize", "swap_pairing", "metric", "window"};
    for (const auto& [k, v] : j.items()) {
      bool ok = false;
      for (const char* a : known) ok = ok || k == a;
      if (!ok) throw Error(ErrorKind::Usage, "unknown config key '" + k + "'");
    }
    take(j, "A_total", c.A_total);
    take(j, "N_nuclei", c.N_nuclei);
    take(j, "I_nuclear", c.I_nuclear);
    take(j, "g_factor", c.g_factor);
    take(j, "state", c.state);
    if (j.contains("B")) {
      if (j["B"].is_number()) c.B = {j["B"].get<double>()};
      else c.B = j["B"].get<std::vector<double>>();
    }
    take(j, "t_max", c.t_max);
    take(j, "step", c.step);
    take(j, "long_grid", c.long_grid);
    take(j, "quadrature", c.quadrature);
    take(j, "m_nodes", c.m_nodes);
    take(j, "q_nodes", c.q_nodes);
    take(j, "output", c.output);
    take(j, "normalize", c.normalize);
    take(j, "swap_pairing", c.swap_pairing);
    take(j, "metric", c.metric);
    take(j, "window", c.window);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Usage, std::string("config: ") + e.what());
  }
  return c;
}

RunConfig read_config(const std::string& path) { return parse_config(slurp(path)); }

std::vector<double> parse_field_list(const std::string& text) {
  std::vector<double> out;
  const std::string s = trim(text);
  if (s.empty()) return out;
  if (s.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(to_number("field range", trim(item)));
    if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0])
      throw Error(ErrorKind::Usage, "field range must be start:stop:step with step > 0");
    const long n = std::lround((parts[1] - parts[0]) / parts[2]);
    for (long k = 0; k <= n; ++k) out.push_back(parts[0] + static_cast<double>(k) * parts[2]);
    return out;
  }
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_number("field", item));
  }
  return out;
}

std::string fmt(double x) {
  if (std::isnan(x)) return "";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_header(std::ostream& os, const RunConfig& c, const std::vector<std::string>& extra) {
  os << "# dqdcorr " << version() << "\n";
  os << "# config " << serialize_config(c) << "\n";
  for (double B : c.B) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "# B = %.6g T (%.6g mT)", B, 1e3 * B);
    os << buf << "\n";
    if (c.B.size() > 3) {
      os << "# ... " << c.B.size() << " fields\n";
      break;
    }
  }
  for (const auto& e : extra) os << "# " << e << "\n";
}

void write_channel_csv(std::ostream& os, const ChannelTrajectory& tr) {
  os << "t_ns,p,c_re,c_im\n";
  for (std::size_t i = 0; i < tr.times.size(); ++i)
    os << fmt(tr.times[i]) << ',' << fmt(tr.p[i]) << ',' << fmt(tr.c[i].real()) << ','
       << fmt(tr.c[i].imag()) << '\n';
}

void write_trajectory_csv(std::ostream& os, const CorrelationTrajectory& ct, bool normalize) {
  os << "t_ns,p,c_re,c_im,a,b_re,b_im,purity,ds_lo,ds_hi,d_lo,d_hi,g,concurrence,wTm1,wT0,wTp1,wS0\n";
  double n_lo = 1.0, n_hi = 1.0;
  if (normalize && !ct.reports.empty()) {
    n_lo = ct.reports.front().bounds.rescaled_lower;
    n_hi = ct.reports.front().bounds.rescaled_upper;
    if (!(n_lo > 0.0) || !(n_hi > 0.0))
      throw Error(ErrorKind::InvalidParameter, "cannot normalize: initial rescaled discord is zero");
  }
  for (const auto& r : ct.reports) {
    os << fmt(r.t) << ',' << fmt(r.p) << ',' << fmt(r.c.real()) << ',' << fmt(r.c.imag()) << ',';
    if (r.bell) os << fmt(r.bell->a) << ',' << fmt(r.bell->b.real()) << ',' << fmt(r.bell->b.imag()) << ',';
    else os << ",,,";
    os << fmt(r.purity) << ',' << fmt(r.bounds.ds_lower) << ',' << fmt(r.bounds.ds_upper) << ','
       << fmt(r.bounds.rescaled_lower / n_lo) << ',' << fmt(r.bounds.rescaled_upper / n_hi) << ','
       << (r.g ? fmt(*r.g) : "") << ',' << fmt(r.concurrence) << ',' << fmt(r.st.Tm1) << ','
       << fmt(r.st.T0) << ',' << fmt(r.st.Tp1) << ',' << fmt(r.st.S0) << '\n';
  }
}

void write_sweep_csv(std::ostream& os, const SweepTable& t) {
  os << "B_T,M,g_min_t,g_min_val,g_max_t,g_max_val,kink_times,esd_t,d_longtime\n";
  for (const auto& r : t.rows) {
    os << fmt(r.B) << ',' << (r.M ? fmt(r.M->lower) : "") << ',';
    os << (r.g.min ? fmt(r.g.min->t) + ',' + fmt(r.g.min->value) : std::string(",")) << ',';
    os << (r.g.max ? fmt(r.g.max->t) + ',' + fmt(r.g.max->value) : std::string(",")) << ',';
    for (std::size_t k = 0; k < r.kink_times.size(); ++k) os << (k ? ";" : "") << fmt(r.kink_times[k]);
    os << ',' << (r.esd ? fmt(*r.esd) : "") << ',' << (r.d_longtime ? fmt(*r.d_longtime) : "") << '\n';
  }
}

void write_curve_csv(std::ostream& os, const CalibrationCurve& c) {
  os << "B_T," << to_string(c.quantity) << "\n";
  for (std::size_t i = 0; i < c.B.size(); ++i) os << fmt(c.B[i]) << ',' << fmt(c.value[i]) << '\n';
}

std::string error_record(const std::string& kind, const std::string& message) {
  return json{{"error", kind}, {"message", message}}.dump();
}

}  // namespace dqd
