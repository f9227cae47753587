#pragma once

#include <cctype>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "loewner/processes.hpp"

namespace loewner {

// Raised on malformed configuration; the message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Key-tree text format: one entry per line, either `key value` (leaf) or
// `key {` ... `}` (block). `#` starts a comment. Keys may repeat (ordered).

struct KeyTree {
  std::string value;  // leaf payload (empty for blocks)
  bool is_block = false;
  std::vector<std::pair<std::string, KeyTree>> children;

  const KeyTree* find(const std::string& key) const {
    for (const auto& [k, v] : children)
      if (k == key) return &v;
    return nullptr;
  }
};

namespace detail {

inline std::string strip(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline void parse_block(std::istringstream& in, KeyTree* node, int* line_no,
                        const std::string& path) {
  std::string raw;
  while (std::getline(in, raw)) {
    ++*line_no;
    std::string line = raw;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = strip(line);
    if (line.empty()) continue;
    if (line == "}") return;
    std::string key, rest;
    const std::size_t ws = line.find_first_of(" \t");
    if (ws == std::string::npos) {
      key = line;
    } else {
      key = line.substr(0, ws);
      rest = strip(line.substr(ws + 1));
    }
    const std::string child_path = path.empty() ? key : path + "." + key;
    KeyTree child;
    if (rest == "{") {
      child.is_block = true;
      parse_block(in, &child, line_no, child_path);
    } else if (rest.empty()) {
      throw ConfigError("config: key '" + child_path +
                        "' has no value (line " + std::to_string(*line_no) +
                        ")");
    } else {
      child.value = rest;
    }
    node->children.emplace_back(key, std::move(child));
  }
  if (!path.empty())
    throw ConfigError("config: unterminated block '" + path + "'");
}

inline void serialize_node(const KeyTree& node, int indent, std::string* out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  for (const auto& [key, child] : node.children) {
    if (child.is_block) {
      *out += pad + key + " {\n";
      serialize_node(child, indent + 1, out);
      *out += pad + "}\n";
    } else {
      *out += pad + key + " " + child.value + "\n";
    }
  }
}

}  // namespace detail

inline KeyTree parse_key_tree(const std::string& text) {
  std::istringstream in(text);
  KeyTree root;
  root.is_block = true;
  int line_no = 0;
  detail::parse_block(in, &root, &line_no, "");
  return root;
}

inline std::string serialize_key_tree(const KeyTree& root) {
  std::string out;
  detail::serialize_node(root, 0, &out);
  return out;
}

// ---------------------------------------------------------------------------
// Experiment configuration.

struct AnalysisSpec {
  enum class Kind { Certificates, LipNorm, Envelope, Occupation, Rescale, Hcap };
  Kind kind = Kind::LipNorm;
  std::string label;
  // certificates
  std::size_t min_window = 8;
  bool scan_all_indices = false;
  // envelope
  double a = 1.0;
  double r = 0.5;
  double t_small = 1.0;
  // occupation / box
  double lo = 0.0, hi = 0.0, T = 1.0;
  std::optional<double> box_eps;
  // rescale
  std::vector<double> r_list;
  std::size_t n_seeds = 0;
  // hcap
  std::size_t n_samples = 0;
  double launch_height = 100.0;
};

struct ExperimentConfig {
  std::string name;
  DriverSpec driver;
  std::size_t solver_n = 1024;
  std::size_t trace_stride = 1;
  std::vector<AnalysisSpec> analyses;
  std::string output_dir = "out";
  bool want_csv = true;
  bool want_svg = false;
};

namespace detail {

inline double to_double(const KeyTree& node, const std::string& path) {
  try {
    std::size_t used = 0;
    const double v = std::stod(node.value, &used);
    if (used != node.value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (...) {
    throw ConfigError("config: key '" + path + "' expects a number, got '" +
                      node.value + "'");
  }
}

inline std::uint64_t to_u64(const KeyTree& node, const std::string& path) {
  try {
    return std::stoull(node.value);
  } catch (...) {
    throw ConfigError("config: key '" + path +
                      "' expects a non-negative integer, got '" + node.value +
                      "'");
  }
}

inline std::vector<double> to_double_list(const KeyTree& node,
                                          const std::string& path) {
  std::vector<double> out;
  std::string tok;
  std::istringstream ss(node.value);
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stod(tok));
    } catch (...) {
      throw ConfigError("config: key '" + path + "' has a bad list entry '" +
                        tok + "'");
    }
  }
  if (out.empty())
    throw ConfigError("config: key '" + path + "' expects a list");
  return out;
}

inline Family family_from_string(const std::string& s,
                                 const std::string& path) {
  if (s == "constant") return Family::Constant;
  if (s == "sqrt_forward") return Family::SqrtForward;
  if (s == "sqrt_backward") return Family::SqrtBackward;
  if (s == "power") return Family::Power;
  if (s == "brownian") return Family::Brownian;
  if (s == "weierstrass") return Family::Weierstrass;
  throw ConfigError("config: key '" + path + "' names unknown family '" + s +
                    "'");
}

inline std::string family_to_string(Family f) {
  switch (f) {
    case Family::Constant: return "constant";
    case Family::SqrtForward: return "sqrt_forward";
    case Family::SqrtBackward: return "sqrt_backward";
    case Family::Power: return "power";
    case Family::Brownian: return "brownian";
    case Family::Weierstrass: return "weierstrass";
  }
  return "constant";
}

inline DriverSpec parse_driver(const KeyTree& block, const std::string& path) {
  DriverSpec spec;
  bool saw_family = false;
  for (const auto& [key, node] : block.children) {
    const std::string kp = path + "." + key;
    if (key == "family") {
      spec.family = family_from_string(node.value, kp);
      saw_family = true;
    } else if (key == "c") {
      spec.c = to_double(node, kp);
    } else if (key == "a") {
      spec.a = to_double(node, kp);
    } else if (key == "r") {
      spec.r = to_double(node, kp);
    } else if (key == "kappa") {
      spec.kappa = to_double(node, kp);
    } else if (key == "depth") {
      spec.depth = static_cast<int>(to_u64(node, kp));
    } else if (key == "hurst") {
      spec.hurst = to_double(node, kp);
    } else if (key == "horizon") {
      spec.horizon = to_double(node, kp);
    } else if (key == "seed") {
      spec.seed = to_u64(node, kp);
    } else if (key == "time_change") {
      if (!node.is_block)
        throw ConfigError("config: key '" + kp + "' must be a block");
      for (const auto& [tk, tn] : node.children) {
        const std::string tp = kp + "." + tk;
        if (tk == "kind") {
          if (tn.value == "identity")
            spec.change.kind = TimeChangeKind::Identity;
          else if (tn.value == "inverse_stable")
            spec.change.kind = TimeChangeKind::InverseStable;
          else if (tn.value == "inverse_tempered_stable")
            spec.change.kind = TimeChangeKind::InverseTemperedStable;
          else
            throw ConfigError("config: key '" + tp +
                              "' names unknown time change '" + tn.value + "'");
        } else if (tk == "alpha") {
          spec.change.alpha = to_double(tn, tp);
        } else if (tk == "theta") {
          spec.change.theta = to_double(tn, tp);
        } else if (tk == "op_resolution") {
          spec.change.op_resolution = to_double(tn, tp);
        } else {
          throw ConfigError("config: unknown key '" + tp + "'");
        }
      }
    } else {
      throw ConfigError("config: unknown key '" + kp + "'");
    }
  }
  if (!saw_family)
    throw ConfigError("config: key '" + path + ".family' is required");
  return spec;
}

inline AnalysisSpec parse_analysis(const std::string& kind_key,
                                   const KeyTree& block,
                                   const std::string& path) {
  AnalysisSpec a;
  a.label = kind_key;
  using Kind = AnalysisSpec::Kind;
  if (kind_key == "certificates")
    a.kind = Kind::Certificates;
  else if (kind_key == "lip_norm")
    a.kind = Kind::LipNorm;
  else if (kind_key == "envelope")
    a.kind = Kind::Envelope;
  else if (kind_key == "occupation")
    a.kind = Kind::Occupation;
  else if (kind_key == "rescale")
    a.kind = Kind::Rescale;
  else if (kind_key == "hcap")
    a.kind = Kind::Hcap;
  else
    throw ConfigError("config: unknown analysis '" + path + "'");

  for (const auto& [key, node] : block.children) {
    const std::string kp = path + "." + key;
    if (a.kind == Kind::Certificates && key == "min_window")
      a.min_window = to_u64(node, kp);
    else if (a.kind == Kind::Certificates && key == "all_indices")
      a.scan_all_indices = node.value == "true";
    else if (a.kind == Kind::Envelope && key == "a")
      a.a = to_double(node, kp);
    else if (a.kind == Kind::Envelope && key == "r")
      a.r = to_double(node, kp);
    else if (a.kind == Kind::Envelope && key == "t_small")
      a.t_small = to_double(node, kp);
    else if (a.kind == Kind::Occupation && key == "lo")
      a.lo = to_double(node, kp);
    else if (a.kind == Kind::Occupation && key == "hi")
      a.hi = to_double(node, kp);
    else if (a.kind == Kind::Occupation && key == "T")
      a.T = to_double(node, kp);
    else if (a.kind == Kind::Occupation && key == "box_eps")
      a.box_eps = to_double(node, kp);
    else if (a.kind == Kind::Rescale && key == "r_list")
      a.r_list = to_double_list(node, kp);
    else if (a.kind == Kind::Rescale && key == "n_seeds")
      a.n_seeds = to_u64(node, kp);
    else if (a.kind == Kind::Hcap && key == "n_samples")
      a.n_samples = to_u64(node, kp);
    else if (a.kind == Kind::Hcap && key == "launch_height")
      a.launch_height = to_double(node, kp);
    else
      throw ConfigError("config: unknown key '" + kp + "'");
  }
  if (a.kind == Kind::Rescale) {
    if (a.r_list.empty() || a.n_seeds == 0)
      throw ConfigError("config: '" + path +
                        "' requires r_list and n_seeds");
    for (std::size_t i = 1; i < a.r_list.size(); ++i)
      if (!(a.r_list[i] > a.r_list[i - 1]))
        throw ConfigError("config: '" + path +
                          ".r_list' must be strictly increasing");
  }
  if (a.kind == Kind::Hcap && a.n_samples == 0)
    throw ConfigError("config: '" + path + "' requires n_samples");
  return a;
}

}  // namespace detail

inline ExperimentConfig parse_experiment_config(const std::string& text) {
  const KeyTree root = parse_key_tree(text);
  ExperimentConfig cfg;
  bool saw_driver = false;
  for (const auto& [key, node] : root.children) {
    if (key == "name") {
      cfg.name = node.value;
    } else if (key == "driver") {
      if (!node.is_block) throw ConfigError("config: 'driver' must be a block");
      cfg.driver = detail::parse_driver(node, "driver");
      saw_driver = true;
    } else if (key == "solver") {
      for (const auto& [sk, sn] : node.children) {
        const std::string sp = "solver." + sk;
        if (sk == "n")
          cfg.solver_n = detail::to_u64(sn, sp);
        else if (sk == "stride")
          cfg.trace_stride = detail::to_u64(sn, sp);
        else
          throw ConfigError("config: unknown key '" + sp + "'");
      }
    } else if (key == "analyses") {
      if (!node.is_block)
        throw ConfigError("config: 'analyses' must be a block");
      for (const auto& [ak, an] : node.children)
        cfg.analyses.push_back(
            detail::parse_analysis(ak, an, "analyses." + ak));
    } else if (key == "output") {
      for (const auto& [ok, on] : node.children) {
        const std::string op = "output." + ok;
        if (ok == "dir") {
          cfg.output_dir = on.value;
        } else if (ok == "formats") {
          cfg.want_csv = cfg.want_svg = false;
          std::istringstream ss(on.value);
          std::string tok;
          while (std::getline(ss, tok, ',')) {
            if (tok == "csv")
              cfg.want_csv = true;
            else if (tok == "svg")
              cfg.want_svg = true;
            else
              throw ConfigError("config: key '" + op +
                                "' has unknown format '" + tok + "'");
          }
        } else {
          throw ConfigError("config: unknown key '" + op + "'");
        }
      }
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  if (cfg.name.empty())
    throw ConfigError("config: key 'name' is required and must be nonempty");
  if (!saw_driver) throw ConfigError("config: key 'driver' is required");
  if (cfg.solver_n < 64)
    throw ConfigError("config: key 'solver.n' must be >= 64");
  if (cfg.trace_stride < 1)
    throw ConfigError("config: key 'solver.stride' must be >= 1");
  cfg.driver.grid_n = cfg.solver_n;
  validate_driver_spec(cfg.driver);
  return cfg;
}

inline std::string serialize_experiment_config(const ExperimentConfig& cfg) {
  std::string out;
  out += "name " + cfg.name + "\n";
  out += "driver {\n";
  out += "  family " + detail::family_to_string(cfg.driver.family) + "\n";
  const auto num = [](double v) {
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    return ss.str();
  };
  switch (cfg.driver.family) {
    case Family::Constant:
    case Family::SqrtForward:
    case Family::SqrtBackward:
      out += "  c " + num(cfg.driver.c) + "\n";
      break;
    case Family::Power:
      out += "  a " + num(cfg.driver.a) + "\n";
      out += "  r " + num(cfg.driver.r) + "\n";
      break;
    case Family::Brownian:
      out += "  kappa " + num(cfg.driver.kappa) + "\n";
      break;
    case Family::Weierstrass:
      out += "  c " + num(cfg.driver.c) + "\n";
      out += "  depth " + std::to_string(cfg.driver.depth) + "\n";
      break;
  }
  out += "  hurst " + num(cfg.driver.hurst) + "\n";
  out += "  horizon " + num(cfg.driver.horizon) + "\n";
  out += "  seed " + std::to_string(cfg.driver.seed) + "\n";
  if (cfg.driver.change.kind != TimeChangeKind::Identity) {
    out += "  time_change {\n";
    out += std::string("    kind ") +
           (cfg.driver.change.kind == TimeChangeKind::InverseStable
                ? "inverse_stable"
                : "inverse_tempered_stable") +
           "\n";
    out += "    alpha " + num(cfg.driver.change.alpha) + "\n";
    if (cfg.driver.change.kind == TimeChangeKind::InverseTemperedStable)
      out += "    theta " + num(cfg.driver.change.theta) + "\n";
    out += "    op_resolution " + num(cfg.driver.change.op_resolution) + "\n";
    out += "  }\n";
  }
  out += "}\n";
  out += "solver {\n";
  out += "  n " + std::to_string(cfg.solver_n) + "\n";
  out += "  stride " + std::to_string(cfg.trace_stride) + "\n";
  out += "}\n";
  out += "analyses {\n";
  for (const auto& a : cfg.analyses) {
    using Kind = AnalysisSpec::Kind;
    switch (a.kind) {
      case Kind::Certificates:
        out += "  certificates {\n";
        out += "    min_window " + std::to_string(a.min_window) + "\n";
        if (a.scan_all_indices) out += "    all_indices true\n";
        out += "  }\n";
        break;
      case Kind::LipNorm:
        out += "  lip_norm {\n  }\n";
        break;
      case Kind::Envelope:
        out += "  envelope {\n";
        out += "    a " + num(a.a) + "\n";
        out += "    r " + num(a.r) + "\n";
        out += "    t_small " + num(a.t_small) + "\n";
        out += "  }\n";
        break;
      case Kind::Occupation:
        out += "  occupation {\n";
        out += "    lo " + num(a.lo) + "\n";
        out += "    hi " + num(a.hi) + "\n";
        out += "    T " + num(a.T) + "\n";
        if (a.box_eps) out += "    box_eps " + num(*a.box_eps) + "\n";
        out += "  }\n";
        break;
      case Kind::Rescale: {
        out += "  rescale {\n    r_list ";
        for (std::size_t i = 0; i < a.r_list.size(); ++i)
          out += (i ? "," : "") + num(a.r_list[i]);
        out += "\n    n_seeds " + std::to_string(a.n_seeds) + "\n  }\n";
        break;
      }
      case Kind::Hcap:
        out += "  hcap {\n";
        out += "    n_samples " + std::to_string(a.n_samples) + "\n";
        out += "    launch_height " + num(a.launch_height) + "\n";
        out += "  }\n";
        break;
    }
  }
  out += "}\n";
  out += "output {\n";
  out += "  dir " + cfg.output_dir + "\n";
  out += std::string("  formats ") +
         (cfg.want_csv && cfg.want_svg ? "csv,svg"
          : cfg.want_svg              ? "svg"
                                      : "csv") +
         "\n";
  out += "}\n";
  return out;
}

}  // namespace loewner
