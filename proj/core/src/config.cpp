#include "parabver/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <istream>
#include <map>

#include "parabver/error.hpp"

namespace parabver {

namespace {

struct Token {
  std::string text;
  int column = 0;
};

struct Line {
  int number = 0;
  std::vector<Token> tokens;
};

class Parser {
 public:
  Parser(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}
  RunConfig parse();

 private:
  [[noreturn]] void fail(const Line& line, const Token& tok, const std::string& message) const {
    throw ParseError(source_, line.number, tok.column, message);
  }
  [[noreturn]] void fail(const Line& line, int column, const std::string& message) const {
    throw ParseError(source_, line.number, column, message);
  }

  std::vector<Token> tokenize(const std::string& text, int number) const;
  double real(const Line& line, std::size_t i) const;
  long integer(const Line& line, std::size_t i) const;
  bool boolean(const Line& line, std::size_t i) const;
  cplx value(const Line& line, std::size_t i) const;
  std::vector<int> tuple(const Line& line, std::size_t i) const;
  std::vector<double> reals_from(const Line& line, std::size_t first) const;
  void expect_count(const Line& line, std::size_t count) const;
  void expect_at_least(const Line& line, std::size_t count) const;

  void problem_line(const Line& line);
  void domain_line(const Line& line);
  void phi_line(const Line& line);
  void stages_line(const Line& line);
  void parabolicity_line(const Line& line);
  void compatibility_line(const Line& line);
  void interpolation_line(const Line& line);
  void sweep_line(const Line& line);
  void weights_line(const Line& line);
  void norms_line(const Line& line);

  void finish();
  void apply_coefficient(const Line& line, bool boundary);
  void apply_data(const Line& line);

  std::istream& in_;
  std::string source_;
  RunConfig cfg_;

  // Problem pieces are collected first and assembled once N and n are known.
  std::optional<long> N_, n_;
  std::optional<double> tau_;
  std::optional<std::vector<int>> l_;
  std::optional<Line> l_line_;
  std::optional<Domain::Kind> kind_;
  std::vector<double> lengths_;
  std::optional<Line> problem_line_;
  std::vector<Line> system_lines_, boundary_lines_, data_lines_;

  std::string phi_kind_ = "constant";
  std::optional<Line> phi_line_;
  double phi_value_ = 1.0;
  std::vector<double> phi_theta_;
  double phi_splice_ = 0.0;
  std::vector<std::pair<double, double>> phi_table_;
  std::optional<Line> stages_line_;
  bool stages_given_ = false;
};

std::vector<Token> Parser::tokenize(const std::string& text, int number) const {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token tok;
    tok.column = static_cast<int>(i) + 1;
    if (c == '(') {
      const std::size_t close = text.find(')', i);
      if (close == std::string::npos) throw ParseError(source_, number, tok.column, "unterminated '('");
      for (std::size_t k = i; k <= close; ++k)
        if (!std::isspace(static_cast<unsigned char>(text[k]))) tok.text.push_back(text[k]);
      i = close + 1;
    } else {
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '#') tok.text.push_back(text[i++]);
    }
    out.push_back(std::move(tok));
  }
  return out;
}

void Parser::expect_count(const Line& line, std::size_t count) const {
  if (line.tokens.size() != count) {
    const int col = line.tokens.size() > count ? line.tokens[count].column : line.tokens.back().column;
    fail(line, col,
         "'" + line.tokens[0].text + "' expects " + std::to_string(count - 1) + " value(s), got " +
             std::to_string(line.tokens.size() - 1));
  }
}

void Parser::expect_at_least(const Line& line, std::size_t count) const {
  if (line.tokens.size() < count)
    fail(line, line.tokens.back().column, "'" + line.tokens[0].text + "' expects at least " +
                                              std::to_string(count - 1) + " value(s)");
}

double Parser::real(const Line& line, std::size_t i) const {
  const Token& tok = line.tokens[i];
  char* end = nullptr;
  const double v = std::strtod(tok.text.c_str(), &end);
  if (tok.text.empty() || end != tok.text.c_str() + tok.text.size()) fail(line, tok, "expected a number, got '" + tok.text + "'");
  return v;
}

long Parser::integer(const Line& line, std::size_t i) const {
  const Token& tok = line.tokens[i];
  char* end = nullptr;
  const long v = std::strtol(tok.text.c_str(), &end, 10);
  if (tok.text.empty() || end != tok.text.c_str() + tok.text.size()) fail(line, tok, "expected an integer, got '" + tok.text + "'");
  return v;
}

bool Parser::boolean(const Line& line, std::size_t i) const {
  const std::string& t = line.tokens[i].text;
  if (t == "true" || t == "yes" || t == "on" || t == "1") return true;
  if (t == "false" || t == "no" || t == "off" || t == "0") return false;
  fail(line, line.tokens[i], "expected a boolean, got '" + t + "'");
}

cplx Parser::value(const Line& line, std::size_t i) const {
  const Token& tok = line.tokens[i];
  if (tok.text.front() != '(') return real(line, i);
  const std::string inner = tok.text.substr(1, tok.text.size() - 2);
  const std::size_t comma = inner.find(',');
  if (comma == std::string::npos) fail(line, tok, "complex values are written (re,im)");
  char* end = nullptr;
  const std::string re_s = inner.substr(0, comma), im_s = inner.substr(comma + 1);
  const double re = std::strtod(re_s.c_str(), &end);
  if (re_s.empty() || end != re_s.c_str() + re_s.size()) fail(line, tok, "bad real part '" + re_s + "'");
  const double im = std::strtod(im_s.c_str(), &end);
  if (im_s.empty() || end != im_s.c_str() + im_s.size()) fail(line, tok, "bad imaginary part '" + im_s + "'");
  return {re, im};
}

std::vector<int> Parser::tuple(const Line& line, std::size_t i) const {
  const Token& tok = line.tokens[i];
  if (tok.text.size() < 2 || tok.text.front() != '(' || tok.text.back() != ')')
    fail(line, tok, "expected an exponent tuple like (1,0), got '" + tok.text + "'");
  std::vector<int> out;
  const std::string inner = tok.text.substr(1, tok.text.size() - 2);
  if (inner.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = inner.find(',', start);
    const std::string part = inner.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    char* end = nullptr;
    const long v = std::strtol(part.c_str(), &end, 10);
    if (part.empty() || end != part.c_str() + part.size() || v < 0)
      fail(line, tok, "tuple entries must be non-negative integers, got '" + part + "'");
    out.push_back(static_cast<int>(v));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<double> Parser::reals_from(const Line& line, std::size_t first) const {
  std::vector<double> out;
  for (std::size_t i = first; i < line.tokens.size(); ++i) out.push_back(real(line, i));
  return out;
}

void Parser::problem_line(const Line& line) {
  const std::string& key = line.tokens[0].text;
  if (key == "N") {
    expect_count(line, 2);
    N_ = integer(line, 1);
    if (*N_ < 1) fail(line, line.tokens[1], "N must be positive");
  } else if (key == "n") {
    expect_count(line, 2);
    n_ = integer(line, 1);
    if (*n_ < 1) fail(line, line.tokens[1], "n must be positive");
  } else if (key == "tau") {
    expect_count(line, 2);
    tau_ = real(line, 1);
    if (!(*tau_ > 0.0)) fail(line, line.tokens[1], "tau must be positive");
  } else if (key == "l") {
    expect_at_least(line, 2);
    std::vector<int> l;
    for (std::size_t i = 1; i < line.tokens.size(); ++i) {
      const long v = integer(line, i);
      if (v != 0 && v != 1) fail(line, line.tokens[i], "boundary orders are 0 or 1");
      l.push_back(static_cast<int>(v));
    }
    l_ = l;
    l_line_ = line;
  } else {
    fail(line, line.tokens[0], "unknown key '" + key + "' in [problem]");
  }
  if (!problem_line_) problem_line_ = line;
}

void Parser::domain_line(const Line& line) {
  const std::string& key = line.tokens[0].text;
  if (key == "kind") {
    expect_count(line, 2);
    const std::string& k = line.tokens[1].text;
    if (k == "periodic") kind_ = Domain::Kind::periodic;
    else if (k == "slab") kind_ = Domain::Kind::slab;
    else if (k == "halfspace") kind_ = Domain::Kind::halfspace;
    else fail(line, line.tokens[1], "domain kind must be periodic, slab or halfspace");
  } else if (key == "lengths") {
    expect_at_least(line, 2);
    lengths_ = reals_from(line, 1);
    for (std::size_t i = 0; i < lengths_.size(); ++i)
      if (!(lengths_[i] > 0.0)) fail(line, line.tokens[i + 1], "lengths must be positive");
  } else {
    fail(line, line.tokens[0], "unknown key '" + key + "' in [domain]");
  }
}

void Parser::phi_line(const Line& line) {
  const std::string& key = line.tokens[0].text;
  if (!phi_line_) phi_line_ = line;
  if (key == "kind") {
    expect_count(line, 2);
    phi_kind_ = line.tokens[1].text;
    if (phi_kind_ != "constant" && phi_kind_ != "log" && phi_kind_ != "table")
      fail(line, line.tokens[1], "phi kind must be constant, log or table");
  } else if (key == "value") {
    expect_count(line, 2);
    phi_value_ = real(line, 1);
  } else if (key == "theta") {
    expect_at_least(line, 2);
    phi_theta_ = reals_from(line, 1);
  } else if (key == "splice") {
    expect_count(line, 2);
    phi_splice_ = real(line, 1);
  } else if (key == "point") {
    expect_count(line, 3);
    phi_table_.emplace_back(real(line, 1), real(line, 2));
  } else {
    fail(line, line.tokens[0], "unknown key '" + key + "' in [phi]");
  }
}

void Parser::stages_line(const Line& line) {
  const std::string& key = line.tokens[0].text;
  if (key != "enabled") fail(line, line.tokens[0], "unknown key '" + key + "' in [stages]");
  stages_given_ = true;
  stages_line_ = line;
  const auto& names = stage_names();
  for (std::size_t i = 1; i < line.tokens.size(); ++i) {
    const std::string& name = line.tokens[i].text;
    if (std::find(names.begin(), names.end(), name) == names.end()) fail(line, line.tokens[i], "unknown stage '" + name + "'");
    if (std::find(cfg_.stages.begin(), cfg_.stages.end(), name) == cfg_.stages.end()) cfg_.stages.push_back(name);
  }
}

void Parser::parabolicity_line(const Line& line) {
  const std::string& key = line.tokens[0].text;
  expect_count(line, 2);
  auto& o = cfg_.parabolicity;
  if (key == "interior") o.interior_samples = static_cast<int>(integer(line, 1));
  else if (key == "boundary") o.boundary_samples = static_cast<int>(integer(line, 1));
  else if (key == "seed") o.seed = static_cast<std::uint64_t>(integer(line, 1));
  else if (key == "tol") o.tol = real(line, 1);
  else if (key == "delta1") o.delta1 = real(line, 1);
  else fail(line, line.tokens[0], "unknown key '" + key + "' in [parabolicity]");
  if ((key == "interior" || key == "boundary") && integer(line, 1) < 1) fail(line, line.tokens[1], "sample counts must be positive");
}

void Parser::compatibility_line(const Line& line) {
  const std::string& key = line.tokens[0].text;
  auto& c = cfg_.compatibility;
  if (key == "s") {
    expect_at_least(line, 2);
    c.s = reals_from(line, 1);
  } else if (key == "tol") {
    expect_count(line, 2);
    c.tol = real(line, 1);
  } else if (key == "listing") {
    expect_count(line, 2);
    c.listing = boolean(line, 1);
  } else {
    fail(line, line.tokens[0], "unknown key '" + key + "' in [compatibility]");
  }
}

void Parser::interpolation_line(const Line& line) {
  const std::string& key = line.tokens[0].text;
  auto& c = cfg_.interpolation;
  if (key == "s0" || key == "s" || key == "s1" || key == "r_max" || key == "tol" || key == "grid") {
    expect_count(line, 2);
    if (key == "s0") c.s0 = real(line, 1);
    else if (key == "s") c.s = real(line, 1);
    else if (key == "s1") c.s1 = real(line, 1);
    else if (key == "r_max") c.r_max = real(line, 1);
    else if (key == "tol") c.tol = real(line, 1);
    else c.grid = static_cast<int>(integer(line, 1));
  } else if (key == "midpoint_s") {
    expect_at_least(line, 2);
    c.midpoint_s = reals_from(line, 1);
  } else if (key == "eps") {
    expect_at_least(line, 2);
    c.eps = reals_from(line, 1);
  } else {
    fail(line, line.tokens[0], "unknown key '" + key + "' in [interpolation]");
  }
}

void Parser::sweep_line(const Line& line) {
  const std::string& key = line.tokens[0].text;
  auto& o = cfg_.sweep.options;
  if (key == "cutoffs") {
    expect_at_least(line, 2);
    o.cutoffs.clear();
    for (std::size_t i = 1; i < line.tokens.size(); ++i) {
      const long v = integer(line, i);
      if (v < 1) fail(line, line.tokens[i], "cutoffs must be positive");
      o.cutoffs.push_back(static_cast<int>(v));
    }
    return;
  }
  if (key == "periods") {
    expect_at_least(line, 2);
    o.periods = reals_from(line, 1);
    return;
  }
  expect_count(line, 2);
  if (key == "s") cfg_.sweep.s = real(line, 1);
  else if (key == "samples") o.samples = static_cast<int>(integer(line, 1));
  else if (key == "seed") o.seed = static_cast<std::uint64_t>(integer(line, 1));
  else if (key == "spread_bound") o.spread_bound = real(line, 1);
  else if (key == "threads") o.threads = static_cast<int>(integer(line, 1));
  else if (key == "invariance_tol") o.invariance_tol = real(line, 1);
  else fail(line, line.tokens[0], "unknown key '" + key + "' in [sweep]");
}

void Parser::weights_line(const Line& line) {
  const std::string& key = line.tokens[0].text;
  auto& w = cfg_.weights;
  if (key == "lambdas") {
    expect_at_least(line, 2);
    w.lambdas = reals_from(line, 1);
    return;
  }
  expect_count(line, 2);
  if (key == "probe") w.probe = real(line, 1);
  else if (key == "tol") w.tol = real(line, 1);
  else if (key == "bound_d") w.bound_d = real(line, 1);
  else if (key == "grid") w.grid = static_cast<int>(integer(line, 1));
  else fail(line, line.tokens[0], "unknown key '" + key + "' in [weights]");
}

void Parser::norms_line(const Line& line) {
  const std::string& key = line.tokens[0].text;
  if (key == "s") {
    expect_at_least(line, 2);
    cfg_.norms.s = reals_from(line, 1);
  } else if (key == "grid") {
    expect_count(line, 2);
    cfg_.norms.grid = static_cast<int>(integer(line, 1));
  } else {
    fail(line, line.tokens[0], "unknown key '" + key + "' in [norms]");
  }
}

void Parser::apply_coefficient(const Line& line, bool boundary) {
  // a j k (alpha) (xexp) texp value
  expect_count(line, 7);
  ProblemSpec& spec = *cfg_.problem;
  const long j = integer(line, 1), k = integer(line, 2);
  if (j < 1 || j > spec.N) fail(line, line.tokens[1], "row index must be in 1..N");
  if (k < 1 || k > spec.N) fail(line, line.tokens[2], "column index must be in 1..N");
  const std::vector<int> alpha = tuple(line, 3);
  if (static_cast<int>(alpha.size()) != spec.n) fail(line, line.tokens[3], "alpha needs n entries");
  int order = 0;
  for (int e : alpha) order += e;
  if (!boundary && order > 2) fail(line, line.tokens[3], "interior operators have order at most 2");
  if (boundary && order > spec.l[static_cast<std::size_t>(j - 1)])
    fail(line, line.tokens[3], "boundary row " + std::to_string(j) + " has order " +
                                   std::to_string(spec.l[static_cast<std::size_t>(j - 1)]));
  const std::vector<int> xexp = tuple(line, 4);
  if (static_cast<int>(xexp.size()) != spec.n) fail(line, line.tokens[4], "x exponents need n entries");
  const long texp = integer(line, 5);
  if (texp < 0) fail(line, line.tokens[5], "t exponent must be non-negative");
  const cplx c = value(line, 6);
  try {
    if (boundary)
      spec.add_b(static_cast<int>(j - 1), static_cast<int>(k - 1), alpha, xexp, static_cast<int>(texp), c);
    else
      spec.add_a(static_cast<int>(j - 1), static_cast<int>(k - 1), alpha, xexp, static_cast<int>(texp), c);
  } catch (const Error& e) {
    fail(line, line.tokens[0], e.what());
  }
}

void Parser::apply_data(const Line& line) {
  const ProblemSpec& spec = *cfg_.problem;
  const std::string& key = line.tokens[0].text;
  const bool initial = key == "h";
  if (key != "u" && key != "f" && key != "g" && key != "h") fail(line, line.tokens[0], "data lines start with u, f, g or h");
  expect_count(line, initial ? 4 : 5);
  const long j = integer(line, 1);
  if (j < 1 || j > spec.N) fail(line, line.tokens[1], "component index must be in 1..N");
  std::vector<int> exps = tuple(line, 2);
  if (static_cast<int>(exps.size()) != spec.n) fail(line, line.tokens[2], "x exponents need n entries");
  if (initial) {
    exps.push_back(0);
  } else {
    const long texp = integer(line, 3);
    if (texp < 0) fail(line, line.tokens[3], "t exponent must be non-negative");
    exps.push_back(static_cast<int>(texp));
  }
  const cplx c = value(line, initial ? 3 : 4);
  auto& d = cfg_.data;
  auto& target = key == "u" ? d.u : key == "f" ? d.f : key == "g" ? d.g : d.h;
  target[static_cast<std::size_t>(j - 1)].add_term(exps, c);
  if (key == "u") d.has_u = true;
  else d.has_explicit = true;
}

void Parser::finish() {
  const bool any_problem = problem_line_ || !system_lines_.empty() || !boundary_lines_.empty() || kind_;
  if (any_problem) {
    const Line& where = problem_line_ ? *problem_line_
                                      : (!system_lines_.empty() ? system_lines_.front() : Line{1, {{"", 1}}});
    if (!N_ || !n_) fail(where, 1, "[problem] needs both N and n");
    ProblemSpec spec;
    spec.N = static_cast<int>(*N_);
    spec.n = static_cast<int>(*n_);
    spec.tau = tau_.value_or(1.0);
    spec.l = l_.value_or(std::vector<int>(static_cast<std::size_t>(spec.N), 0));
    if (static_cast<int>(spec.l.size()) != spec.N) fail(*l_line_, l_line_->tokens[0].column, "l needs N entries");
    spec.domain.kind = kind_.value_or(Domain::Kind::slab);
    spec.domain.lengths = lengths_.empty() ? std::vector<double>(static_cast<std::size_t>(spec.n), 1.0) : lengths_;
    if (static_cast<int>(spec.domain.lengths.size()) != spec.n) fail(where, 1, "[domain] lengths need n entries");
    cfg_.problem = spec;
    for (const Line& line : system_lines_) apply_coefficient(line, false);
    for (const Line& line : boundary_lines_) apply_coefficient(line, true);
    try {
      cfg_.problem->validate();
    } catch (const Error& e) {
      fail(where, 1, e.what());
    }
    auto& d = cfg_.data;
    for (auto* part : {&d.u, &d.f, &d.g, &d.h}) part->assign(static_cast<std::size_t>(spec.N), MultiPoly(spec.n + 1));
    for (const Line& line : data_lines_) apply_data(line);
  } else if (!data_lines_.empty()) {
    fail(data_lines_.front(), 1, "[data] needs a [problem] section");
  }

  try {
    if (phi_kind_ == "constant") cfg_.phi = SlowlyVaryingFn::constant(phi_value_);
    else if (phi_kind_ == "log") cfg_.phi = SlowlyVaryingFn::log_multiscale(phi_theta_, phi_splice_);
    else cfg_.phi = SlowlyVaryingFn::tabulated(phi_table_);
  } catch (const Error& e) {
    fail(*phi_line_, 1, e.what());
  }

  const auto& names = stage_names();
  if (!stages_given_) {
    cfg_.stages = {"weights", "interpolation"};
    if (cfg_.problem) {
      cfg_.stages.push_back("parabolicity");
      if (!cfg_.compatibility.s.empty() && (cfg_.data.has_u || cfg_.data.has_explicit)) cfg_.stages.push_back("compatibility");
      if (cfg_.problem->constant_coefficients()) cfg_.stages.push_back("sweep");
      if (cfg_.data.has_u) cfg_.stages.push_back("norms");
    }
  } else if (!cfg_.problem) {
    for (const std::string& s : cfg_.stages)
      if (s != "weights" && s != "interpolation") fail(*stages_line_, 1, "stage '" + s + "' needs a [problem] section");
  }
  std::vector<std::string> ordered;
  for (const std::string& name : names)
    if (std::find(cfg_.stages.begin(), cfg_.stages.end(), name) != cfg_.stages.end()) ordered.push_back(name);
  cfg_.stages = ordered;
}

RunConfig Parser::parse() {
  cfg_.source = source_;
  std::string section;
  std::string text;
  int number = 0;
  const std::map<std::string, std::function<void(const Line&)>> handlers{
      {"problem", [this](const Line& l) { problem_line(l); }},
      {"domain", [this](const Line& l) { domain_line(l); }},
      {"system", [this](const Line& l) {
         if (l.tokens[0].text != "a") fail(l, l.tokens[0], "[system] lines start with 'a'");
         system_lines_.push_back(l);
       }},
      {"boundary", [this](const Line& l) {
         if (l.tokens[0].text != "b") fail(l, l.tokens[0], "[boundary] lines start with 'b'");
         boundary_lines_.push_back(l);
       }},
      {"data", [this](const Line& l) { data_lines_.push_back(l); }},
      {"phi", [this](const Line& l) { phi_line(l); }},
      {"stages", [this](const Line& l) { stages_line(l); }},
      {"parabolicity", [this](const Line& l) { parabolicity_line(l); }},
      {"compatibility", [this](const Line& l) { compatibility_line(l); }},
      {"interpolation", [this](const Line& l) { interpolation_line(l); }},
      {"sweep", [this](const Line& l) { sweep_line(l); }},
      {"weights", [this](const Line& l) { weights_line(l); }},
      {"norms", [this](const Line& l) { norms_line(l); }},
  };
  while (std::getline(in_, text)) {
    ++number;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    Line line{number, tokenize(text, number)};
    if (line.tokens.empty()) continue;
    const Token& first = line.tokens[0];
    if (first.text.front() == '[') {
      if (first.text.back() != ']' || line.tokens.size() != 1) fail(line, first, "malformed section header");
      section = first.text.substr(1, first.text.size() - 2);
      if (!handlers.count(section)) fail(line, first, "unknown section '" + section + "'");
      continue;
    }
    if (section.empty()) fail(line, first, "entry outside of any section");
    handlers.at(section)(line);
  }
  finish();
  return cfg_;
}

}  // namespace

RunConfig parse_config(std::istream& in, const std::string& source) { return Parser(in, source).parse(); }

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, 0, "cannot open config file");
  return parse_config(in, path);
}

}  // namespace parabver
