#include "system_file.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "symsys/errors.hpp"
#include "symsys/expression.hpp"

namespace symsys::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Section {
  std::string name;
  std::size_t line = 0;  // line of the header
  std::vector<std::pair<std::size_t, std::string>> body;
};

[[noreturn]] void fail_at(const std::string& origin, std::size_t line, const std::string& what) {
  throw InputError(origin + ":" + std::to_string(line) + ": " + what);
}

double to_number(const std::string& origin, std::size_t line, const std::string& text) {
  try {
    std::size_t used = 0;
    const std::string t = trim(text);
    if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
    if (t == "-inf") return -std::numeric_limits<double>::infinity();
    const double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::logic_error&) {
    fail_at(origin, line, "expected a number, got '" + text + "'");
  }
}

std::map<std::string, std::pair<std::size_t, std::string>> key_values(const Section& s, const std::string& origin) {
  std::map<std::string, std::pair<std::size_t, std::string>> out;
  for (const auto& [line, text] : s.body) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) fail_at(origin, line, "expected key = value in [" + s.name + "]");
    const std::string key = trim(text.substr(0, eq));
    if (out.count(key)) fail_at(origin, line, "duplicate key '" + key + "'");
    out[key] = {line, trim(text.substr(eq + 1))};
  }
  return out;
}

CoefficientField field(const Section& s, int rows, int cols, const std::string& origin) {
  std::string text;
  for (const auto& [line, body] : s.body) {
    (void)line;
    text += body + "\n";
  }
  if (s.body.empty()) fail_at(origin, s.line, "section [" + s.name + "] is empty");
  try {
    return parse_matrix_function(text, rows, cols);
  } catch (const SyntaxError& e) {
    const std::size_t line = s.body.front().first + e.line() - 1;
    std::string what = e.what();
    const auto at = what.rfind(" at line ");
    if (at != std::string::npos) what.resize(at);
    fail_at(origin, line, "[" + s.name + "] " + what + " (column " + std::to_string(e.column()) + ")");
  } catch (const InputError& e) {
    fail_at(origin, s.line, "[" + s.name + "] " + e.what());
  }
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item).empty()) throw InputError("empty entry in list '" + text + "'");
    out.push_back(to_number("<list>", 0, item));
  }
  if (out.empty()) throw InputError("empty list");
  return out;
}

SystemFile parse_system_file(const std::string& text, const std::string& origin) {
  static const std::set<std::string> known{"system", "J", "B", "H", "A", "V", "q", "defaults"};
  std::map<std::string, Section> sections;
  Section* current = nullptr;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const std::string name = line.size() > 2 && line.front() == '[' && line.back() == ']'
                                 ? trim(line.substr(1, line.size() - 2))
                                 : std::string();
    if (!name.empty() && std::all_of(name.begin(), name.end(), [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; })) {
      if (!known.count(name)) fail_at(origin, lineno, "unknown section [" + name + "]");
      if (sections.count(name)) fail_at(origin, lineno, "duplicate section [" + name + "]");
      current = &sections[name];
      current->name = name;
      current->line = lineno;
      continue;
    }
    if (!current) fail_at(origin, lineno, "text before the first section header");
    current->body.emplace_back(lineno, line);
  }

  if (!sections.count("system")) fail_at(origin, lineno, "missing [system] section");
  SystemFile f;
  f.source = text;
  const auto head = key_values(sections["system"], origin);
  for (const auto& [key, v] : head) {
    if (key == "name") {
      f.name = v.second;
    } else if (key == "n") {
      const double n = to_number(origin, v.first, v.second);
      if (n < 1 || n != static_cast<int>(n)) fail_at(origin, v.first, "n must be a positive integer");
      f.n = static_cast<int>(n);
    } else if (key == "interval") {
      try {
        f.interval = parse_interval(v.second);
      } catch (const InputError& e) {
        fail_at(origin, v.first, e.what());
      }
    } else if (key == "x0") {
      f.x0 = to_number(origin, v.first, v.second);
    } else {
      fail_at(origin, v.first, "unknown key '" + key + "' in [system]");
    }
  }
  if (!head.count("n")) fail_at(origin, sections["system"].line, "[system] needs n");
  if (!head.count("interval")) f.interval = Interval::real_line();

  const int n = f.n;
  const bool square = sections.count("A") > 0;
  if (!sections.count("H")) fail_at(origin, lineno, "missing [H] section");
  f.H = field(sections["H"], n, n, origin);
  if (sections.count("J")) {
    f.J = field(sections["J"], n, n, origin);
  } else if (square) {
    f.J = CoefficientField::identity(n, cd(0.0, 1.0));
  } else {
    fail_at(origin, lineno, "missing [J] section");
  }
  f.B = sections.count("B") ? field(sections["B"], n, n, origin) : CoefficientField::zero(n, n);
  if (square) f.A = field(sections["A"], n, n, origin);
  if (sections.count("V")) f.V = field(sections["V"], n, n, origin);
  if (sections.count("q")) f.q = field(sections["q"], 1, 1, origin);
  if (!square && (f.V || f.q)) fail_at(origin, sections.count("V") ? sections["V"].line : sections["q"].line,
                                       "[V] and [q] need an [A] section");

  if (sections.count("defaults")) {
    for (const auto& [key, v] : key_values(sections["defaults"], origin)) {
      if (key == "tol") {
        f.defaults.tol = to_number(origin, v.first, v.second);
      } else if (key == "grid") {
        f.defaults.grid = static_cast<int>(to_number(origin, v.first, v.second));
      } else if (key == "truncations") {
        try {
          f.defaults.truncations = parse_number_list(v.second);
        } catch (const InputError& e) {
          fail_at(origin, v.first, e.what());
        }
      } else {
        fail_at(origin, v.first, "unknown key '" + key + "' in [defaults]");
      }
    }
  }
  return f;
}

SystemFile load_system_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_system_file(ss.str(), path.string());
}

SymmetricSystem SystemFile::system() const { return SymmetricSystem(interval, J, B, H, x0); }

SquareSystemSpec SystemFile::square_spec() const {
  if (!A) throw InputError("the file has no [A] section");
  return SquareSystemSpec{system(), *A, V ? *V : CoefficientField::zero(n, n), q ? *q : CoefficientField::identity(1)};
}

}  // namespace symsys::cli
