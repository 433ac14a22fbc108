#include "stablelike/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace stablelike {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw std::runtime_error("config line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Strips a trailing comment that is not inside a quoted string.
std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    else if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

double parse_number(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) fail(line, "trailing characters in number '" + v + "'");
    return x;
  } catch (const std::invalid_argument&) {
    fail(line, "expected a number, got '" + v + "'");
  } catch (const std::out_of_range&) {
    fail(line, "number out of range: '" + v + "'");
  }
}

std::uint64_t parse_u64(const std::string& v, int line) {
  std::uint64_t x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size())
    fail(line, "expected a non-negative integer, got '" + v + "'");
  return x;
}

std::string parse_string(const std::string& v, int line) {
  if (v.size() < 2 || v.front() != '"' || v.back() != '"')
    fail(line, "expected a quoted string, got '" + v + "'");
  return v.substr(1, v.size() - 2);
}

std::vector<std::string> parse_array(const std::string& v, int line) {
  if (v.size() < 2 || v.front() != '[' || v.back() != ']')
    fail(line, "expected an array, got '" + v + "'");
  std::vector<std::string> out;
  const std::string body = v.substr(1, v.size() - 2);
  std::string item;
  bool quoted = false;
  for (char c : body) {
    if (c == '"') quoted = !quoted;
    if (c == ',' && !quoted) {
      out.push_back(trim(item));
      item.clear();
    } else {
      item += c;
    }
  }
  if (!trim(item).empty()) out.push_back(trim(item));
  for (auto& e : out) e = parse_string(e, line);
  return out;
}

std::string fmt(double x) {
  if (x == std::floor(x) && std::abs(x) < 1e15) {
    std::ostringstream os;
    os << static_cast<long long>(x) << ".0";
    return os.str();
  }
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::string fmt_array(const std::vector<std::string>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += '"' + xs[i] + '"';
  }
  return out + "]";
}

}  // namespace

void RunConfig::validate() const {
  if (dimension < 1 || dimension > 16)
    throw std::invalid_argument("model.dimension must be in [1,16]");
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::invalid_argument("model.alpha must lie in (0,2)");
  if (!(scale > 0.0)) throw std::invalid_argument("model.scale must be > 0");
  if (!entries.empty() &&
      entries.size() != static_cast<std::size_t>(dimension) * dimension)
    throw std::invalid_argument("model.entries must have dimension^2 items");
  if (!(region > 0.0)) throw std::invalid_argument("model.region must be > 0");
  if (mode != "fixed" && mode != "jump_adapted")
    throw std::invalid_argument(
        "scheme.mode must be \"fixed\" or \"jump_adapted\"");
  if (!(dt > 0.0)) throw std::invalid_argument("scheme.dt must be > 0");
  if (!(beta > 0.0)) throw std::invalid_argument("scheme.beta must be > 0");
  if (!(t_cap > 0.0)) throw std::invalid_argument("scheme.t_cap must be > 0");
  if (max_steps == 0)
    throw std::invalid_argument("scheme.max_steps must be > 0");
  if (n == 0) throw std::invalid_argument("run.n must be > 0");
  if (threads < 1) throw std::invalid_argument("run.threads must be >= 1");
  for (const auto& f : formats)
    if (f != "json" && f != "csv")
      throw std::invalid_argument("output.formats entries must be json or csv");
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      section = line.substr(1, line.size() - 2);
      if (section != "model" && section != "scheme" && section != "run" &&
          section != "output")
        fail(line_no, "unknown section [" + section + "]");
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (section.empty()) fail(line_no, "key before any section header");
    if (section == "model") {
      if (key == "dimension")
        cfg.dimension = static_cast<int>(parse_u64(val, line_no));
      else if (key == "alpha") cfg.alpha = parse_number(val, line_no);
      else if (key == "scale") cfg.scale = parse_number(val, line_no);
      else if (key == "entries") cfg.entries = parse_array(val, line_no);
      else if (key == "region") cfg.region = parse_number(val, line_no);
      else fail(line_no, "unknown key model." + key);
    } else if (section == "scheme") {
      if (key == "mode") cfg.mode = parse_string(val, line_no);
      else if (key == "dt") cfg.dt = parse_number(val, line_no);
      else if (key == "beta") cfg.beta = parse_number(val, line_no);
      else if (key == "t_cap") cfg.t_cap = parse_number(val, line_no);
      else if (key == "max_steps") cfg.max_steps = parse_u64(val, line_no);
      else fail(line_no, "unknown key scheme." + key);
    } else if (section == "run") {
      if (key == "seed") cfg.seed = parse_u64(val, line_no);
      else if (key == "n") cfg.n = parse_u64(val, line_no);
      else if (key == "threads")
        cfg.threads = static_cast<int>(parse_u64(val, line_no));
      else fail(line_no, "unknown key run." + key);
    } else {  // output
      if (key == "directory") cfg.directory = parse_string(val, line_no);
      else if (key == "formats") cfg.formats = parse_array(val, line_no);
      else fail(line_no, "unknown key output." + key);
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream os;
  os << "[model]\n";
  os << "dimension = " << cfg.dimension << "\n";
  os << "alpha = " << fmt(cfg.alpha) << "\n";
  os << "scale = " << fmt(cfg.scale) << "\n";
  if (!cfg.entries.empty()) os << "entries = " << fmt_array(cfg.entries) << "\n";
  os << "region = " << fmt(cfg.region) << "\n";
  os << "\n[scheme]\n";
  os << "mode = \"" << cfg.mode << "\"\n";
  os << "dt = " << fmt(cfg.dt) << "\n";
  os << "beta = " << fmt(cfg.beta) << "\n";
  os << "t_cap = " << fmt(cfg.t_cap) << "\n";
  os << "max_steps = " << cfg.max_steps << "\n";
  os << "\n[run]\n";
  os << "seed = " << cfg.seed << "\n";
  os << "n = " << cfg.n << "\n";
  os << "threads = " << cfg.threads << "\n";
  os << "\n[output]\n";
  os << "directory = \"" << cfg.directory << "\"\n";
  os << "formats = " << fmt_array(cfg.formats) << "\n";
  return os.str();
}

std::uint64_t config_hash(const RunConfig& cfg) {
  const std::string s = serialize_config(cfg);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  return serialize_config(a) == serialize_config(b);
}

}  // namespace stablelike
