#include "vpa/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "vpa/corpus.hpp"

namespace vpa {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::size_t parse_size(const std::string& text) {
  const std::string t = trim(text);
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError("expected a non-negative integer, got '" + text + "'");
  }
  return v;
}

double parse_double(const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError("expected a number, got '" + text + "'");
  }
  return v;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

LebesgueExponent parse_exponent(const std::string& text) {
  try {
    return LebesgueExponent::parse(trim(text));
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

MRule parse_rule(const std::string& text) {
  const std::string t = trim(text);
  if (t == "0") return {0, 1};
  if (t == "n") return {1, 1};
  if (t.rfind("n/", 0) == 0) {
    const std::size_t den = parse_size(t.substr(2));
    if (den == 0) throw ConfigError("m rule divides by zero: '" + text + "'");
    return {1, den};
  }
  const auto slash = t.find('/');
  if (slash != std::string::npos && t.find("n*") == 0) {
    const std::size_t num = parse_size(t.substr(2, slash - 2));
    const std::size_t den = parse_size(t.substr(slash + 1));
    if (den == 0) throw ConfigError("m rule divides by zero: '" + text + "'");
    return {num, den};
  }
  throw ConfigError("m rule must be 0, n, n/D or n*A/D, got '" + text + "'");
}

std::string format_rule(const MRule& r) {
  if (r.num == 0) return "0";
  if (r.num == 1 && r.den == 1) return "n";
  if (r.num == 1) return "n/" + std::to_string(r.den);
  return "n*" + std::to_string(r.num) + "/" + std::to_string(r.den);
}

template <class T, class F>
std::string join(const std::vector<T>& v, F&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += fmt(v[i]);
  }
  return out;
}

template <class T, class F>
std::vector<T> parse_list(const std::string& text, F&& parse) {
  std::vector<T> out;
  for (const auto& item : split_list(text)) out.push_back(parse(item));
  return out;
}

// One entry per key: how to read it into a config and how to write it.
struct Key {
  std::string section;
  std::string name;
  std::function<void(RunConfig&, const std::string&)> read;
  std::function<std::string(const RunConfig&)> write;
};

template <class Member>
Key size_key(std::string section, std::string name, Member member) {
  return {std::move(section), std::move(name),
          [member](RunConfig& c, const std::string& v) { c.*member = parse_size(v); },
          [member](const RunConfig& c) { return std::to_string(c.*member); }};
}

template <class Member>
Key size_list_key(std::string section, std::string name, Member member) {
  return {std::move(section), std::move(name),
          [member](RunConfig& c, const std::string& v) { c.*member = parse_size_list(v); },
          [member](const RunConfig& c) { return join(c.*member, [](std::size_t x) { return std::to_string(x); }); }};
}

template <class Member>
Key exponent_list_key(std::string section, std::string name, Member member) {
  return {std::move(section), std::move(name),
          [member](RunConfig& c, const std::string& v) {
            c.*member = parse_list<LebesgueExponent>(v, parse_exponent);
          },
          [member](const RunConfig& c) { return join(c.*member, [](const LebesgueExponent& p) { return p.to_string(); }); }};
}

template <class Member>
Key tol_key(std::string name, Member member) {
  return {"tolerances", std::move(name),
          [member](RunConfig& c, const std::string& v) { c.tol.*member = parse_double(v); },
          [member](const RunConfig& c) { return format_double(c.tol.*member); }};
}

const std::vector<Key>& keys() {
  static const std::vector<Key> k = {
      {"run", "corpus",
       [](RunConfig& c, const std::string& v) {
         auto names = split_list(v);
         if (names.size() == 1 && names[0] == "all") names.clear();
         c.corpus = names;
       },
       [](const RunConfig& c) { return c.corpus.empty() ? std::string("all") : join(c.corpus, [](const std::string& s) { return s; }); }},
      {"run", "statements", [](RunConfig& c, const std::string& v) { c.statements = parse_statement_list(v); },
       [](const RunConfig& c) { return join(c.statements, [](Statement s) { return std::string(to_string(s)); }); }},
      {"run", "output", [](RunConfig& c, const std::string& v) { c.output = trim(v); },
       [](const RunConfig& c) { return c.output; }},
      size_key("run", "samples", &RunConfig::samples),

      size_list_key("grid", "n", &RunConfig::n_list),
      {"grid", "m_rule", [](RunConfig& c, const std::string& v) { c.m_rules = parse_list<MRule>(v, parse_rule); },
       [](const RunConfig& c) { return join(c.m_rules, format_rule); }},
      size_key("grid", "x_count", &RunConfig::x_count),
      exponent_list_key("grid", "p", &RunConfig::p_list),

      tol_key("explicit_abs", &Tolerances::explicit_abs),
      tol_key("quadrature_rel", &Tolerances::quadrature_rel),
      tol_key("rhs_floor", &Tolerances::rhs_floor),
      tol_key("lhs_floor", &Tolerances::lhs_floor),
      tol_key("monotone", &Tolerances::monotone),
      tol_key("lemma1_rel", &Tolerances::lemma1_rel),
      tol_key("comparison", &Tolerances::comparison),
      tol_key("decay_factor", &Tolerances::decay_factor),
      tol_key("decay_floor", &Tolerances::decay_floor),
      tol_key("halving", &Tolerances::halving),

      size_list_key("lemma1", "n", &RunConfig::l1_n),
      exponent_list_key("lemma1", "p", &RunConfig::l1_p),
      size_key("lemma1", "x_count", &RunConfig::l1_x_count),
      size_list_key("lemma1", "k", &RunConfig::l1_k),

      size_key("lemma2", "max_n", &RunConfig::l2_max_n),
      size_key("lemma2", "max_m", &RunConfig::l2_max_m),
      size_key("lemma2", "deltas", &RunConfig::l2_deltas),

      size_list_key("c1", "n", &RunConfig::c1_n),
      size_key("c1", "from", &RunConfig::c1_from),
      size_key("c1", "to", &RunConfig::c1_to),
      {"c1", "points", [](RunConfig& c, const std::string& v) { c.c1_points = parse_list<double>(v, parse_double); },
       [](const RunConfig& c) { return join(c.c1_points, format_double); }},
      {"c1", "controls",
       [](RunConfig& c, const std::string& v) {
         c.c1_controls.clear();
         for (const auto& item : split_list(v)) {
           const auto at = item.find('@');
           if (at == std::string::npos) throw ConfigError("control must read NAME@X, got '" + item + "'");
           c.c1_controls.emplace_back(trim(item.substr(0, at)), parse_double(item.substr(at + 1)));
         }
       },
       [](const RunConfig& c) {
         return join(c.c1_controls, [](const std::pair<std::string, double>& e) { return e.first + "@" + format_double(e.second); });
       }},

      size_key("cmp", "samples", &RunConfig::cmp_samples),
      size_list_key("cmp", "k", &RunConfig::cmp_k),

      size_key("fit", "split", &RunConfig::fit_split),
  };
  return k;
}

bool power_of_two(std::size_t n) { return n >= 16 && (n & (n - 1)) == 0; }

}  // namespace

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text) { return parse_list<std::size_t>(text, parse_size); }

std::vector<Statement> parse_statement_list(const std::string& text) {
  std::vector<Statement> out;
  for (const auto& item : split_list(text)) {
    const auto s = parse_statement(item);
    if (!s) throw ConfigError("unknown statement '" + item + "'");
    if (std::find(out.begin(), out.end(), *s) == out.end()) out.push_back(*s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

RunConfig parse_config(const std::string& text) {
  boost::property_tree::ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("config syntax: " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  RunConfig c;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError("key '" + section + "' outside a section");
    }
    for (const auto& [name, value] : body) {
      const auto& all = keys();
      auto it = std::find_if(all.begin(), all.end(),
                             [&](const Key& k) { return k.section == section && k.name == name; });
      if (it == all.end()) throw ConfigError("unknown key '" + name + "' in section [" + section + "]");
      try {
        it->read(c, value.data());
      } catch (const ConfigError& e) {
        throw ConfigError("[" + section + "] " + name + ": " + e.what());
      }
    }
  }
  validate(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string serialize(const RunConfig& c) {
  std::string out;
  std::string section;
  for (const auto& k : keys()) {
    if (k.section != section) {
      if (!section.empty()) out += "\n";
      section = k.section;
      out += "[" + section + "]\n";
    }
    out += k.name + " = " + k.write(c) + "\n";
  }
  return out;
}

void validate(const RunConfig& c) {
  auto fail = [](const std::string& what) { throw ConfigError(what); };
  for (const auto& name : c.corpus) {
    try {
      find_function(name);
    } catch (const UnknownFunction& e) {
      fail(e.what());
    }
  }
  if (!power_of_two(c.samples)) fail("[run] samples must be a power of two >= 16");
  if (!power_of_two(c.cmp_samples)) fail("[cmp] samples must be a power of two >= 16");
  if (c.x_count == 0) fail("[grid] x_count must be positive");
  if (c.l1_x_count == 0) fail("[lemma1] x_count must be positive");
  for (const auto& r : c.m_rules) {
    if (r.den == 0 || r.num > r.den) fail("[grid] m rules must satisfy 0 <= m <= n");
  }
  for (const auto& p : c.l1_p) {
    if (!p.is_infinite() && p.value() <= 1.0) fail("[lemma1] p must exceed 1");
  }
  if (std::find(c.c1_n.begin(), c.c1_n.end(), c.c1_from) == c.c1_n.end() ||
      std::find(c.c1_n.begin(), c.c1_n.end(), c.c1_to) == c.c1_n.end()) {
    fail("[c1] from and to must appear in n");
  }
  for (const auto& [name, x] : c.c1_controls) {
    try {
      find_function(name);
    } catch (const UnknownFunction& e) {
      fail(e.what());
    }
  }
  if (c.l2_deltas == 0) fail("[lemma2] deltas must be positive");

  // Largest harmonic any check touches: sigma_{n+q,m} with q = 2(m+1), the
  // tau difference n+m+1, best approximation of degree 2n.
  std::size_t kmax = 0;
  for (std::size_t n : c.n_list) {
    for (const auto& r : c.m_rules) kmax = std::max({kmax, n + 2 * (r.apply(n) + 1), 2 * n});
  }
  kmax = std::max(kmax, c.l2_max_n + 1);
  for (std::size_t n : c.c1_n) kmax = std::max(kmax, n);
  if (c.samples < 4 * kmax) {
    fail("[run] samples = " + std::to_string(c.samples) + " is below 4 * " + std::to_string(kmax) +
         " needed by the grid");
  }
  std::size_t l1max = 0;
  for (std::size_t n : c.l1_n) l1max = std::max(l1max, n);
  if (c.samples < 4 * l1max) fail("[run] samples too small for [lemma1] n");
  if (c.l2_max_m > c.samples / 2) fail("[lemma2] max_m too large");
}

}  // namespace vpa
