#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "fairsample/circuit.hpp"
#include "fairsample/error.hpp"

namespace fairsample {
namespace {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string angle(double exponent) { return format_double(exponent) + "*pi"; }

// Recursive descent over + - * / ( ) pi and numeric literals. Returns radians.
class ExprParser {
 public:
  ExprParser(std::string_view text, int line) : s_(text), line_(line) {}

  double parse() {
    double v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing characters in expression");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, msg); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  double expr() {
    double v = term();
    for (;;) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }

  double term() {
    double v = unary();
    for (;;) {
      if (eat('*')) v *= unary();
      else if (eat('/')) v /= unary();
      else return v;
    }
  }

  double unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return primary();
  }

  double primary() {
    if (eat('(')) {
      double v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    skip();
    if (s_.substr(pos_, 2) == "pi") {
      pos_ += 2;
      return std::numbers::pi;
    }
    const char* begin = s_.data() + pos_;
    double v = 0.0;
    auto res = std::from_chars(begin, s_.data() + s_.size(), v);
    if (res.ec != std::errc{}) fail("expected a number or 'pi'");
    pos_ += static_cast<std::size_t>(res.ptr - begin);
    return v;
  }

  std::string_view s_;
  int line_;
  std::size_t pos_ = 0;
};

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

int parse_index(std::string_view ref, char reg, int line) {
  std::string r = trim(ref);
  if (r.size() < 4 || r[0] != reg || r[1] != '[' || r.back() != ']')
    throw ParseError(line, "expected register reference like " + std::string(1, reg) + "[i], got '" + r + "'");
  int idx = 0;
  auto digits = std::string_view(r).substr(2, r.size() - 3);
  auto res = std::from_chars(digits.data(), digits.data() + digits.size(), idx);
  if (res.ec != std::errc{} || res.ptr != digits.data() + digits.size())
    throw ParseError(line, "bad register index in '" + r + "'");
  return idx;
}

std::vector<std::string> split_args(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',') {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

std::string to_qasm(const Circuit& circuit) {
  std::ostringstream os;
  const auto labels = circuit.measured_labels();
  int creg = 0;
  for (int l : labels) creg = std::max(creg, l + 1);
  os << "OPENQASM 2.0;\n";
  os << "include \"qelib1.inc\";\n";
  os << "qreg q[" << circuit.num_wires() << "];\n";
  if (creg > 0) os << "creg c[" << creg << "];\n";
  for (const auto& g : circuit.gates()) {
    const int a = g.qubits[0];
    const int b = g.qubits[1];
    switch (g.kind) {
      case GateKind::H:
      case GateKind::X:
      case GateKind::T:
      case GateKind::Tdg:
        os << gate_kind_name(g.kind) << " q[" << a << "];\n";
        break;
      case GateKind::PhaseShift:
        os << "u1(" << angle(g.exponent) << ") q[" << a << "];\n";
        break;
      case GateKind::CPhaseShift:
        os << "cu1(" << angle(g.exponent) << ") q[" << a << "],q[" << b << "];\n";
        break;
      case GateKind::CNOT:
      case GateKind::SWAP:
        os << gate_kind_name(g.kind) << " q[" << a << "],q[" << b << "];\n";
        break;
    }
  }
  const auto& measured = circuit.measured_wires();
  for (std::size_t k = 0; k < measured.size(); ++k)
    os << "measure q[" << measured[k] << "] -> c[" << labels[k] << "];\n";
  for (int w : circuit.ancilla_wires()) os << "// postselect q[" << w << "]=0\n";
  return os.str();
}

Circuit from_qasm(std::string_view text) {
  std::optional<Circuit> circuit;
  std::vector<std::pair<int, int>> measures;  // wire, label
  std::vector<int> ancillas;
  std::vector<Gate> pending;
  std::vector<int> pending_lines;

  int line = 1;
  std::string stmt;
  int stmt_line = 1;
  auto handle = [&](const std::string& raw, int at) {
    std::string s = trim(raw);
    if (s.empty()) return;
    if (s.rfind("OPENQASM", 0) == 0) {
      if (trim(s.substr(8)) != "2.0") throw ParseError(at, "only OpenQASM 2.0 is supported");
      return;
    }
    if (s.rfind("include", 0) == 0 || s.rfind("creg", 0) == 0 || s.rfind("barrier", 0) == 0) return;
    if (s.rfind("qreg", 0) == 0) {
      if (circuit) throw ParseError(at, "only one quantum register is supported");
      circuit.emplace(parse_index(s.substr(4), 'q', at));
      return;
    }
    if (s.rfind("measure", 0) == 0) {
      auto arrow = s.find("->");
      if (arrow == std::string::npos) throw ParseError(at, "measure without '->'");
      measures.emplace_back(parse_index(s.substr(7, arrow - 7), 'q', at),
                            parse_index(s.substr(arrow + 2), 'c', at));
      return;
    }
    std::size_t name_end = 0;
    while (name_end < s.size() && (std::isalnum(static_cast<unsigned char>(s[name_end])) || s[name_end] == '_'))
      ++name_end;
    const std::string name = s.substr(0, name_end);
    std::string rest = s.substr(name_end);
    double param = 0.0;
    bool has_param = false;
    rest = trim(rest);
    if (!rest.empty() && rest[0] == '(') {
      auto close = rest.rfind(')');
      if (close == std::string::npos) throw ParseError(at, "missing ')' in gate parameters");
      param = ExprParser(std::string_view(rest).substr(1, close - 1), at).parse();
      has_param = true;
      rest = trim(rest.substr(close + 1));
    }
    auto args = split_args(rest);
    auto q = [&](std::size_t i) { return parse_index(args.at(i), 'q', at); };
    auto need = [&](std::size_t nargs, bool param_needed) {
      if (args.size() != nargs) throw ParseError(at, "gate '" + name + "' has the wrong number of operands");
      if (param_needed != has_param) throw ParseError(at, "gate '" + name + "' has the wrong parameter list");
    };
    Gate g;
    if (name == "h") { need(1, false); g = Gate::h(q(0)); }
    else if (name == "x") { need(1, false); g = Gate::x(q(0)); }
    else if (name == "t") { need(1, false); g = Gate::t(q(0)); }
    else if (name == "tdg") { need(1, false); g = Gate::tdg(q(0)); }
    else if (name == "u1") { need(1, true); g = Gate::phase(q(0), param / std::numbers::pi); }
    else if (name == "cu1") { need(2, true); g = Gate::cphase(q(0), q(1), param / std::numbers::pi); }
    else if (name == "cx") { need(2, false); g = Gate::cnot(q(0), q(1)); }
    else if (name == "swap") { need(2, false); g = Gate::swap(q(0), q(1)); }
    else throw ParseError(at, "unsupported statement '" + name + "'");
    pending.push_back(g);
    pending_lines.push_back(at);
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      auto end = text.find('\n', i);
      std::string comment = trim(text.substr(i + 2, end == std::string_view::npos ? std::string_view::npos : end - i - 2));
      const std::string key = "postselect";
      if (comment.rfind(key, 0) == 0) {
        std::string spec = trim(comment.substr(key.size()));
        auto eq = spec.find('=');
        if (eq == std::string::npos || trim(spec.substr(eq + 1)) != "0")
          throw ParseError(line, "postselect comment must read 'postselect q[i]=0'");
        ancillas.push_back(parse_index(spec.substr(0, eq), 'q', line));
      }
      if (end == std::string_view::npos) break;
      i = end - 1;
      continue;
    }
    if (c == '\n') ++line;
    if (c == ';') {
      handle(stmt, stmt_line);
      stmt.clear();
      continue;
    }
    if (trim(stmt).empty() && !std::isspace(static_cast<unsigned char>(c))) stmt_line = line;
    stmt.push_back(c);
  }
  if (!trim(stmt).empty()) throw ParseError(stmt_line, "statement missing ';'");
  if (!circuit) throw ParseError(line, "no qreg declaration");

  for (std::size_t k = 0; k < pending.size(); ++k) {
    try {
      circuit->append(pending[k]);
    } catch (const InputError& e) {
      throw ParseError(pending_lines[k], e.what());
    }
  }
  const int n = circuit->num_wires();
  try {
    circuit->set_ancilla_wires(ancillas);
  } catch (const InputError& e) {
    throw ParseError(line, e.what());
  }
  if (!measures.empty()) {
    std::vector<int> perm(static_cast<std::size_t>(n), -1);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    std::vector<int> wires;
    for (auto [w, l] : measures) {
      if (w < 0 || w >= n || l < 0 || l >= n || perm[static_cast<std::size_t>(w)] != -1 || used[static_cast<std::size_t>(l)])
        throw ParseError(line, "measure statements do not form an injective wire-to-bit map");
      perm[static_cast<std::size_t>(w)] = l;
      used[static_cast<std::size_t>(l)] = 1;
      wires.push_back(w);
    }
    int next = 0;
    for (int w = 0; w < n; ++w) {
      if (perm[static_cast<std::size_t>(w)] != -1) continue;
      while (used[static_cast<std::size_t>(next)]) ++next;
      perm[static_cast<std::size_t>(w)] = next;
      used[static_cast<std::size_t>(next)] = 1;
    }
    circuit->set_readout_perm(std::move(perm));
    try {
      circuit->set_measured_wires(std::move(wires));
    } catch (const InputError& e) {
      throw ParseError(line, e.what());
    }
  }
  return std::move(*circuit);
}

}  // namespace fairsample
