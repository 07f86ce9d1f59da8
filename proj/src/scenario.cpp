#include "microgrid/scenario.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "microgrid/errors.hpp"

namespace microgrid {

Graph resolve_graph(const GraphSpec& spec, std::uint64_t seed) {
  if (spec.explicit_edges) return Graph(spec.n, spec.edges);
  return generate_graph(spec.kind, spec.n, seed, spec.p);
}

bool Scenario::operator==(const Scenario& other) const {
  return graph == other.graph && wtp == other.wtp && initial_demand == other.initial_demand &&
         agent_params.alpha == other.agent_params.alpha &&
         agent_params.demand_floor == other.agent_params.demand_floor &&
         pricing.a == other.pricing.a && pricing.k == other.pricing.k &&
         pricing.capacity == other.pricing.capacity &&
         pricing.sigmoid_kind == other.pricing.sigmoid_kind && pricing.tau == other.pricing.tau &&
         protocol.mode == other.protocol.mode && protocol.max_slots == other.protocol.max_slots &&
         protocol.eq_tolerance == other.protocol.eq_tolerance &&
         protocol.eq_consecutive == other.protocol.eq_consecutive &&
         protocol.avg_tolerance == other.protocol.avg_tolerance &&
         protocol.avg_max_rounds == other.protocol.avg_max_rounds && seed == other.seed &&
         output_dir == other.output_dir;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_real(const std::string& key, const std::string& text, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing garbage");
    if (!std::isfinite(v)) throw std::invalid_argument("not finite");
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, key + ": not a real number: '" + text + "'");
  }
}

long long parse_int(const std::string& key, const std::string& text, int line) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing garbage");
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, key + ": not an integer: '" + text + "'");
  }
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) parts.push_back(trim(item));
  if (!text.empty() && text.back() == ',') parts.emplace_back();
  return parts;
}

Eigen::VectorXd parse_vector(const std::string& key, const std::string& text, int line) {
  const auto parts = split_commas(text);
  if (parts.empty()) throw ParseError(line, key + ": empty vector");
  Eigen::VectorXd v(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = parse_real(key, parts[i], line);
  return v;
}

// Raw key/value occurrences with their line numbers; `edge` may repeat.
struct RawConfig {
  std::map<std::string, std::pair<std::string, int>> values;
  std::vector<std::pair<std::pair<int, int>, int>> edges;
  bool consumed_all = false;
};

const char* const kKnownKeys[] = {
    "graph.kind",           "graph.n",
    "graph.p",              "agents.wtp",
    "agents.initial_demand", "agents.alpha",
    "agents.demand_floor",  "price.a",
    "price.k",              "price.capacity",
    "price.sigmoid",        "price.tau",
    "protocol.mode",        "protocol.max_slots",
    "protocol.eq_tolerance", "protocol.eq_consecutive",
    "protocol.avg_tolerance", "protocol.avg_max_rounds",
    "seed",                 "output.dir",
};

bool known_key(const std::string& key) {
  for (const char* k : kKnownKeys)
    if (key == k) return true;
  return false;
}

RawConfig scan_lines(const std::string& text) {
  RawConfig raw;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ParseError(lineno, "expected 'key = value', got '" + stripped + "'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) throw ParseError(lineno, "missing key before '='");
    if (value.empty()) throw ParseError(lineno, key + ": missing value");

    if (key == "edge") {
      const auto parts = split_commas(value);
      if (parts.size() != 2) throw ParseError(lineno, "edge: expected 'i,j'");
      raw.edges.push_back({{static_cast<int>(parse_int("edge", parts[0], lineno)),
                            static_cast<int>(parse_int("edge", parts[1], lineno))},
                           lineno});
      continue;
    }
    if (!known_key(key)) throw ValidationError(key, "unknown key");
    if (raw.values.count(key)) throw ValidationError(key, "duplicate key");
    raw.values[key] = {value, lineno};
  }
  return raw;
}

class ConfigReader {
 public:
  explicit ConfigReader(RawConfig raw) : raw_(std::move(raw)) {}

  std::optional<std::pair<std::string, int>> take(const std::string& key) {
    auto it = raw_.values.find(key);
    if (it == raw_.values.end()) return std::nullopt;
    auto out = it->second;
    raw_.values.erase(it);
    return out;
  }

  double real_or(const std::string& key, double fallback) {
    if (auto v = take(key)) return parse_real(key, v->first, v->second);
    return fallback;
  }

  long long int_or(const std::string& key, long long fallback) {
    if (auto v = take(key)) return parse_int(key, v->first, v->second);
    return fallback;
  }

  const std::vector<std::pair<std::pair<int, int>, int>>& edges() const { return raw_.edges; }

 private:
  RawConfig raw_;
};

void require_positive(const std::string& key, double v) {
  if (!(v > 0.0)) throw ValidationError(key, "must be positive");
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  ConfigReader cfg{scan_lines(text)};
  Scenario s;

  // Topology: a generator kind, or graph.n with explicit edge lines.
  const auto kind = cfg.take("graph.kind");
  const auto gn = cfg.take("graph.n");
  if (!gn) throw ValidationError("graph.n", "required");
  s.graph.n = static_cast<int>(parse_int("graph.n", gn->first, gn->second));
  if (s.graph.n < 1) throw ValidationError("graph.n", "must be at least 1");
  if (kind) {
    if (!cfg.edges().empty())
      throw ValidationError("graph.kind", "conflicts with explicit edge lines");
    try {
      s.graph.kind = graph_kind_from_string(kind->first);
    } catch (const ArgumentError& e) {
      throw ValidationError("graph.kind", e.what());
    }
    if (s.graph.kind == GraphKind::erdos_renyi) {
      const auto p = cfg.take("graph.p");
      if (!p) throw ValidationError("graph.p", "required for erdos_renyi");
      s.graph.p = parse_real("graph.p", p->first, p->second);
      if (!(s.graph.p > 0.0 && s.graph.p <= 1.0))
        throw ValidationError("graph.p", "must be in (0, 1]");
    } else if (cfg.take("graph.p")) {
      throw ValidationError("graph.p", "only meaningful for erdos_renyi");
    }
    if (s.graph.n < 2) throw ValidationError("graph.n", "generators need at least 2 nodes");
  } else {
    if (cfg.take("graph.p")) throw ValidationError("graph.p", "only meaningful for erdos_renyi");
    s.graph.explicit_edges = true;
    for (const auto& [edge, line] : cfg.edges()) {
      if (edge.first < 0 || edge.second < 0 || edge.first >= s.graph.n ||
          edge.second >= s.graph.n || edge.first == edge.second)
        throw ParseError(line, "edge: endpoints out of range or equal");
      s.graph.edges.push_back(edge);
    }
    try {
      s.graph.edges = Graph(s.graph.n, s.graph.edges).edges();  // normalize and dedup-check
    } catch (const ArgumentError& e) {
      throw ValidationError("edge", e.what());
    }
  }

  const auto wtp = cfg.take("agents.wtp");
  if (!wtp) throw ValidationError("agents.wtp", "required");
  s.wtp = parse_vector("agents.wtp", wtp->first, wtp->second);
  const auto demand = cfg.take("agents.initial_demand");
  if (!demand) throw ValidationError("agents.initial_demand", "required");
  s.initial_demand = parse_vector("agents.initial_demand", demand->first, demand->second);

  if (s.wtp.size() != s.graph.n)
    throw ValidationError("agents.wtp", "length " + std::to_string(s.wtp.size()) +
                                            " does not match graph.n = " +
                                            std::to_string(s.graph.n));
  if (s.initial_demand.size() != s.graph.n)
    throw ValidationError("agents.initial_demand",
                          "length " + std::to_string(s.initial_demand.size()) +
                              " does not match graph.n = " + std::to_string(s.graph.n));
  for (Eigen::Index i = 0; i < s.wtp.size(); ++i) {
    if (!(s.wtp(i) > 0.0)) throw ValidationError("agents.wtp", "entries must be positive");
    if (!(s.initial_demand(i) > 0.0))
      throw ValidationError("agents.initial_demand", "entries must be positive");
  }

  s.agent_params.alpha = cfg.real_or("agents.alpha", 0.05);
  if (!(s.agent_params.alpha > 0.0 && s.agent_params.alpha < 1.0))
    throw ValidationError("agents.alpha", "must be in (0, 1)");
  s.agent_params.demand_floor = cfg.real_or("agents.demand_floor", 1e-6);
  require_positive("agents.demand_floor", s.agent_params.demand_floor);

  s.pricing.a = cfg.real_or("price.a", 1.0);
  require_positive("price.a", s.pricing.a);
  s.pricing.k = cfg.real_or("price.k", 4.0);
  if (!(s.pricing.k >= 1.0)) throw ValidationError("price.k", "must be at least 1");
  const auto capacity = cfg.take("price.capacity");
  if (!capacity) throw ValidationError("price.capacity", "required");
  s.pricing.capacity = parse_real("price.capacity", capacity->first, capacity->second);
  require_positive("price.capacity", s.pricing.capacity);
  if (const auto sigmoid = cfg.take("price.sigmoid")) {
    try {
      s.pricing.sigmoid_kind = sigmoid_kind_from_string(sigmoid->first);
    } catch (const ArgumentError& e) {
      throw ValidationError("price.sigmoid", e.what());
    }
  }
  s.pricing.tau = cfg.real_or("price.tau", 10.0);
  require_positive("price.tau", s.pricing.tau);

  if (const auto mode = cfg.take("protocol.mode")) {
    try {
      s.protocol.mode = mode_from_string(mode->first);
    } catch (const ArgumentError& e) {
      throw ValidationError("protocol.mode", e.what());
    }
  }
  s.protocol.max_slots = static_cast<int>(cfg.int_or("protocol.max_slots", 500));
  if (s.protocol.max_slots < 1) throw ValidationError("protocol.max_slots", "must be at least 1");
  s.protocol.eq_tolerance = cfg.real_or("protocol.eq_tolerance", 1e-4);
  require_positive("protocol.eq_tolerance", s.protocol.eq_tolerance);
  s.protocol.eq_consecutive = static_cast<int>(cfg.int_or("protocol.eq_consecutive", 5));
  if (s.protocol.eq_consecutive < 1)
    throw ValidationError("protocol.eq_consecutive", "must be at least 1");
  s.protocol.avg_tolerance = cfg.real_or("protocol.avg_tolerance", 1e-9);
  require_positive("protocol.avg_tolerance", s.protocol.avg_tolerance);
  s.protocol.avg_max_rounds = static_cast<int>(cfg.int_or("protocol.avg_max_rounds", 0));
  if (s.protocol.avg_max_rounds < 0)
    throw ValidationError("protocol.avg_max_rounds", "must be nonnegative");
  s.protocol.n_known = s.graph.n;

  if (const auto seed = cfg.take("seed")) {
    const std::string& text = seed->first;
    try {
      if (!text.empty() && text[0] == '-') throw std::invalid_argument("negative");
      std::size_t used = 0;
      s.seed = std::stoull(text, &used);
      if (used != text.size()) throw std::invalid_argument("trailing garbage");
    } catch (const std::exception&) {
      throw ParseError(seed->second, "seed: not a nonnegative integer: '" + text + "'");
    }
  }
  if (const auto dir = cfg.take("output.dir")) s.output_dir = dir->first;

  return s;
}

namespace {

std::string real_key(double v) {
  char buf[32];
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    std::snprintf(buf, sizeof buf, "%.0f", v);
    return buf;
  }
  // Shortest representation that parses back to the same double.
  std::snprintf(buf, sizeof buf, "%.17g", v);
  for (int precision = 1; precision < 17; ++precision) {
    char probe[32];
    std::snprintf(probe, sizeof probe, "%.*g", precision, v);
    if (std::stod(probe) == v) return probe;
  }
  return buf;
}

std::string join_vector(const Eigen::VectorXd& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += real_key(v(i));
  }
  return out;
}

}  // namespace

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "graph.n = " << s.graph.n << "\n";
  if (s.graph.explicit_edges) {
    for (const auto& [i, j] : s.graph.edges) out << "edge = " << i << "," << j << "\n";
  } else {
    out << "graph.kind = " << to_string(s.graph.kind) << "\n";
    if (s.graph.kind == GraphKind::erdos_renyi) out << "graph.p = " << real_key(s.graph.p) << "\n";
  }
  out << "agents.wtp = " << join_vector(s.wtp) << "\n";
  out << "agents.initial_demand = " << join_vector(s.initial_demand) << "\n";
  out << "agents.alpha = " << real_key(s.agent_params.alpha) << "\n";
  out << "agents.demand_floor = " << real_key(s.agent_params.demand_floor) << "\n";
  out << "price.a = " << real_key(s.pricing.a) << "\n";
  out << "price.k = " << real_key(s.pricing.k) << "\n";
  out << "price.capacity = " << real_key(s.pricing.capacity) << "\n";
  out << "price.sigmoid = " << to_string(s.pricing.sigmoid_kind) << "\n";
  out << "price.tau = " << real_key(s.pricing.tau) << "\n";
  out << "protocol.mode = " << to_string(s.protocol.mode) << "\n";
  out << "protocol.max_slots = " << s.protocol.max_slots << "\n";
  out << "protocol.eq_tolerance = " << real_key(s.protocol.eq_tolerance) << "\n";
  out << "protocol.eq_consecutive = " << s.protocol.eq_consecutive << "\n";
  out << "protocol.avg_tolerance = " << real_key(s.protocol.avg_tolerance) << "\n";
  out << "protocol.avg_max_rounds = " << s.protocol.avg_max_rounds << "\n";
  out << "seed = " << s.seed << "\n";
  out << "output.dir = " << s.output_dir << "\n";
  return out.str();
}

Scenario preset_scenario() {
  Scenario s;
  s.graph.explicit_edges = false;
  s.graph.kind = GraphKind::ring;
  s.graph.n = 10;
  s.wtp.resize(10);
  s.wtp << 45, 98, 67, 80, 90, 93, 50, 50, 57, 72;
  s.initial_demand.resize(10);
  s.initial_demand << 57.3, 98.1, 75.2, 85.7, 90.9, 93.4, 52.2, 69.9, 62.9, 80.3;
  s.agent_params.alpha = 0.05;
  s.agent_params.demand_floor = 1e-6;
  s.pricing.a = 1.0;
  s.pricing.k = 4.0;
  s.pricing.capacity = 700.0;
  s.pricing.sigmoid_kind = SigmoidKind::zero_centered;
  // tau = 12 keeps the demand map contracting at the capacity boundary; at
  // tau = 10 the slope 1 - alpha*(a*(k+1) + capacity/(2 tau)) hits -1 exactly
  // and the run rings forever instead of settling.
  s.pricing.tau = 12.0;
  s.protocol = ProtocolConfig{};
  s.protocol.mode = Mode::Static;
  s.protocol.n_known = 10;
  s.seed = 1;
  s.output_dir = "out";

  if (std::abs(s.initial_demand.sum() - 765.9) > 1e-12 * 765.9)
    throw std::logic_error("preset: initial demands must sum to 765.9");
  if (s.wtp.sum() != 702.0) throw std::logic_error("preset: wtp must sum to 702");
  return s;
}

void sample_initial_demands(Scenario& s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (Eigen::Index i = 0; i < s.initial_demand.size(); ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    s.initial_demand(i) = 50.0 + 50.0 * u;
  }
}

}  // namespace microgrid
