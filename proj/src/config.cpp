#include "qglab/config.hpp"

#include <fstream>
#include <sstream>

#include "qglab/csv.hpp"
#include "qglab/errors.hpp"

namespace qglab {

namespace {

template <class F>
auto field(const std::string& key, const std::string& value, F&& parse) {
  try {
    return parse(value);
  } catch (const std::exception& e) {
    throw ConfigError(key + ": cannot parse '" + value + "'");
  }
}

int as_int(const std::string& key, const std::string& v) {
  return static_cast<int>(field(key, v, [](const std::string& s) { return parse_integer(s); }));
}
double as_real(const std::string& key, const std::string& v) {
  return field(key, v, [](const std::string& s) { return parse_real(s); });
}
std::pair<double, double> as_range(const std::string& key, const std::string& v) {
  const auto parts = split(v, ',');
  if (parts.size() != 2) throw ConfigError(key + ": expected 'lo,hi'");
  return {as_real(key, trim(parts[0])), as_real(key, trim(parts[1]))};
}
bool as_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key + ": expected true or false");
}

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::string& text, const std::string& origin) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(number) + ": expected 'key = value'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty() || key.find('.') == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(number) + ": keys take the form section.name");
    if (!out.emplace(key, value).second)
      throw ConfigError(origin + ":" + std::to_string(number) + ": duplicate key " + key);
  }
  return out;
}

ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  ExperimentConfig c;
  c.base_dir = base_dir;
  bool degree_given = false;
  for (const auto& [key, v] : parse_key_values(text)) {
    if (key == "model.q") c.q = as_int(key, v);
    else if (key == "model.length") c.length = as_real(key, v);
    else if (key == "model.alpha") c.alpha = as_real(key, v);
    else if (key == "model.potential") c.potential = v;
    else if (key == "graph.kind") c.kind = parse_graph_kind(v);
    else if (key == "graph.sizes") {
      c.sizes.clear();
      for (const auto& part : split(v, ',')) c.sizes.push_back(as_int(key, trim(part)));
    } else if (key == "graph.degree") {
      c.degree = as_int(key, v);
      degree_given = true;
    } else if (key == "graph.seed") {
      c.seed = static_cast<std::uint64_t>(field(key, v, [](const std::string& s) { return std::stoull(s); }));
    } else if (key == "band.index") c.band_index = as_int(key, v);
    else if (key == "band.range") std::tie(c.range_lo, c.range_hi) = as_range(key, v);
    else if (key == "band.window") c.window = as_range(key, v);
    else if (key == "observable.kind") c.observable = v;
    else if (key == "observable.order") c.order = as_int(key, v);
    else if (key == "observable.file") c.observable_file = v;
    else if (key == "run.trials") c.trials = as_int(key, v);
    else if (key == "run.grid_n") c.grid_n = as_int(key, v);
    else if (key == "run.kernel_grid_n") c.kernel_grid_n = as_int(key, v);
    else if (key == "run.threads") c.threads = as_int(key, v);
    else if (key == "run.scan_n") c.scan_n = as_int(key, v);
    else if (key == "run.dump_eigenfunctions") c.dump_eigenfunctions = as_bool(key, v);
    else throw ConfigError("unknown key " + key);
  }
  if (!degree_given) c.degree = c.q + 1;
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
}

void ExperimentConfig::validate() const {
  if (q < 1) throw ConfigError("model.q must be >= 1");
  if (!(length > 0.0)) throw ConfigError("model.length must be positive");
  if (degree != q + 1)
    throw ConfigError("graph.degree = " + std::to_string(degree) + " must equal model.q + 1 = " + std::to_string(q + 1));
  if (sizes.empty()) throw ConfigError("graph.sizes must not be empty");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 3) throw ConfigError("graph.sizes entries must be >= 3");
    if (i > 0 && sizes[i] <= sizes[i - 1]) throw ConfigError("graph.sizes must be strictly ascending");
  }
  if (band_index < 1) throw ConfigError("band.index must be >= 1");
  if (!(range_hi >= range_lo)) throw ConfigError("band.range must satisfy lo <= hi");
  if (window && !(window->second > window->first)) throw ConfigError("band.window must satisfy lo < hi");
  if (trials < 1) throw ConfigError("run.trials must be >= 1");
  if (grid_n < 2 || grid_n % 2) throw ConfigError("run.grid_n must be even and >= 2");
  if (kernel_grid_n < 2 || kernel_grid_n % 2) throw ConfigError("run.kernel_grid_n must be even and >= 2");
  if (threads < 0) throw ConfigError("run.threads must be >= 0");
  if (scan_n < 0) throw ConfigError("run.scan_n must be >= 0");
  if (observable == "file") {
    if (observable_file.empty()) throw ConfigError("observable.kind = file needs observable.file");
    if (!std::filesystem::exists(resolve(observable_file)))
      throw ConfigError("observable.file " + resolve(observable_file).string() + " does not exist");
  } else {
    parse_observable_family(observable);
  }
  if (order < 1 || order > kMaxKernelOrder)
    throw ConfigError("observable.order must be in [1, " + std::to_string(kMaxKernelOrder) + "]");
  if (potential.rfind("file:", 0) == 0 && !std::filesystem::exists(resolve(potential.substr(5))))
    throw ConfigError("model.potential file " + resolve(potential.substr(5)).string() + " does not exist");
  model();
}

std::filesystem::path ExperimentConfig::resolve(const std::string& path) const {
  const std::filesystem::path p(path);
  return p.is_absolute() ? p : base_dir / p;
}

TreeModel ExperimentConfig::model() const {
  TreeModel m;
  m.q = q;
  m.length = length;
  m.alpha = alpha;
  m.grid_n = grid_n;
  if (potential == "zero") {
    m.potential = Potential::zero(length);
  } else if (potential.rfind("cosine:", 0) == 0) {
    m.potential = Potential::cosine(length, as_real("model.potential", potential.substr(7)));
  } else if (potential.rfind("file:", 0) == 0) {
    m.potential = Potential::load_csv(resolve(potential.substr(5)), length);
  } else {
    throw ConfigError("model.potential must be zero, cosine:<amplitude> or file:<path>");
  }
  m.validate();
  return m;
}

SweepConfig ExperimentConfig::sweep() const {
  if (observable == "file")
    throw ConfigError("sweeps regenerate observables per graph; observable.kind = file is not supported");
  SweepConfig s;
  s.kind = kind;
  s.sizes = sizes;
  s.degree = degree;
  s.model = model();
  s.band_index = band_index;
  s.range_lo = range_lo;
  s.range_hi = range_hi;
  s.window = window;
  s.family = parse_observable_family(observable);
  s.order = order;
  s.kernel_grid_n = kernel_grid_n;
  s.trials = trials;
  s.seed = seed;
  s.scan_n = scan_n;
  return s;
}

}  // namespace qglab
