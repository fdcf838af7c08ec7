#include "oocrn/crn_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace oocrn {

namespace {

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

class line_parser {
public:
  line_parser(std::string_view text, std::size_t lineno) : text_(text), lineno_(lineno) {}

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= text_.size();
  }
  bool peek_digit() {
    skip_ws();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }
  bool consume(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_).starts_with(tok)) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  std::uint32_t parse_nat() {
    skip_ws();
    std::uint64_t v = 0;
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > 0xffffffffULL) err("coefficient out of range");
      ++pos_;
    }
    if (pos_ == start) err("expected a number");
    return static_cast<std::uint32_t>(v);
  }

  std::string parse_name() {
    skip_ws();
    if (pos_ >= text_.size() || !name_start(text_[pos_])) err("expected a species name");
    std::size_t start = pos_;
    while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  [[noreturn]] void err(const std::string& what) {
    fail(errc::parse, "line " + std::to_string(lineno_) + ", col " + std::to_string(pos_ + 1) +
                          ": " + what);
  }

private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t lineno_;
};

std::vector<std::pair<species_id, std::uint32_t>> parse_side(line_parser& p, crn& net) {
  std::vector<std::pair<species_id, std::uint32_t>> terms;
  if (p.peek_digit()) {
    const std::uint32_t first = p.parse_nat();
    // A bare `0` denotes an empty side; the caller validates what follows.
    if (first == 0) return terms;
    terms.emplace_back(net.intern(p.parse_name()), first);
  } else {
    terms.emplace_back(net.intern(p.parse_name()), 1u);
  }
  while (p.consume("+")) {
    std::uint32_t coeff = 1;
    if (p.peek_digit()) {
      coeff = p.parse_nat();
      if (coeff == 0) p.err("zero coefficient");
    }
    terms.emplace_back(net.intern(p.parse_name()), coeff);
  }
  return terms;
}

}  // namespace

crn parse_crn(const std::string& text) {
  crn net;
  std::vector<std::string> input_names, output_names;
  std::string leader_name;
  bool saw_leader = false;

  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    while (!raw.empty() && (raw.back() == '\r' || raw.back() == ' ' || raw.back() == '\t'))
      raw.pop_back();
    line_parser p(raw, lineno);
    if (p.done()) continue;

    if (p.consume("@input")) {
      while (!p.done()) input_names.push_back(p.parse_name());
      if (input_names.empty() || input_names.size() > 2) p.err("@input takes one or two species");
      continue;
    }
    if (p.consume("@output")) {
      while (!p.done()) output_names.push_back(p.parse_name());
      if (output_names.size() != 1) p.err("@output takes exactly one species");
      continue;
    }
    if (p.consume("@leader")) {
      leader_name = p.parse_name();
      saw_leader = true;
      if (!p.done()) p.err("trailing text after @leader");
      continue;
    }
    if (p.consume("@")) p.err("unknown pragma");

    auto lhs = parse_side(p, net);
    if (!p.consume("->")) p.err("expected `->`");
    auto rhs = parse_side(p, net);
    if (!p.done()) p.err("trailing text after reaction");
    if (lhs.empty() && rhs.empty()) p.err("reaction with both sides empty");
    net.add_reaction(std::move(lhs), std::move(rhs));
  }

  for (const auto& nm : input_names) net.inputs.push_back(net.intern(nm));
  for (const auto& nm : output_names) net.outputs.push_back(net.intern(nm));
  if (!saw_leader) fail(errc::parse, "missing @leader pragma");
  if (input_names.empty()) fail(errc::parse, "missing @input pragma");
  if (output_names.empty()) fail(errc::parse, "missing @output pragma");
  net.leader = net.intern(leader_name);
  return net;
}

std::string serialize_crn(const crn& net) {
  std::ostringstream os;
  os << "@input";
  for (const species_id sp : net.inputs) os << ' ' << net.name(sp);
  os << '\n' << "@output";
  for (const species_id sp : net.outputs) os << ' ' << net.name(sp);
  os << '\n' << "@leader " << net.name(net.leader) << '\n';
  for (const reaction& r : net.reactions) os << reaction_str(net, r) << '\n';
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io, "cannot write " + path);
  out << content;
}

crn load_crn_file(const std::string& path) { return parse_crn(read_file(path)); }

}  // namespace oocrn
