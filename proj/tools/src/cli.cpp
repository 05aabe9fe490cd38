// Copyright 2026 The hazkw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hazkw/bounds.hpp"
#include "hazkw/formula.hpp"
#include "hazkw/hazard.hpp"
#include "hazkw/implicants.hpp"
#include "hazkw/kw_game.hpp"
#include "hazkw/mux_synth.hpp"
#include "hazkw/ternary.hpp"
#include "hazkw/transforms.hpp"
#include "json.hpp"

namespace hazkw::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Largest arity for which a builtin function is materialized as a table.
constexpr std::size_t kTableArity = 24;
// Up to this arity `hazards` enumerates every input by default.
constexpr std::size_t kExhaustiveDefaultArity = 8;

std::string trim(std::string s) {
  auto blank = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), blank));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), blank).base(), s.end());
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
}

// ---------------------------------------------------------------------------
// Truth specifications

struct TruthArg {
  std::optional<std::size_t> mux_n;
  std::optional<TruthTable> table;
  std::size_t arity = 0;

  VarStyle style() const { return mux_n ? VarStyle::Mux : VarStyle::Indexed; }

  const TruthTable& require_table() const {
    if (!table)
      throw UsageError("this command needs an explicit truth table; MUX_" +
                       std::to_string(*mux_n) + " is too large");
    return *table;
  }

  ImplicantSet implicants() const {
    return mux_n ? mux_prime_implicants(*mux_n)
                 : prime_implicants(require_table());
  }
  ImplicantSet implicates() const {
    return mux_n ? mux_prime_implicates(*mux_n)
                 : prime_implicates(require_table());
  }
  CommMatrix matrix() const {
    return mux_n ? mux_matrix(*mux_n) : build_matrix(require_table());
  }
};

std::optional<std::size_t> numbered(const std::string& s,
                                    const std::string& prefix) {
  if (s.size() <= prefix.size() || s.compare(0, prefix.size(), prefix) != 0)
    return std::nullopt;
  const std::string digits = s.substr(prefix.size());
  if (!std::all_of(digits.begin(), digits.end(),
                   [](unsigned char c) { return std::isdigit(c); }) ||
      digits.size() > 3)
    return std::nullopt;
  return static_cast<std::size_t>(std::stoul(digits));
}

std::optional<TruthArg> parse_inline_truth(const std::string& arg,
                                            std::optional<std::size_t> vars) {
  TruthArg t;
  if (auto n = numbered(arg, "mux")) {
    if (*n == 0 || *n > 6) throw UsageError("mux<n> needs 1 <= n <= 6");
    t.mux_n = *n;
    t.arity = mux_arity(*n);
    if (t.arity <= kTableArity) t.table = TruthTable::mux(*n);
    return t;
  }
  auto builtin = [&](const char* prefix, TruthTable (*make)(std::size_t))
      -> std::optional<TruthArg> {
    auto n = numbered(arg, prefix);
    if (!n) return std::nullopt;
    if (*n == 0 || *n > kTableArity)
      throw UsageError(std::string(prefix) + "<n> needs 1 <= n <= 24");
    TruthArg s;
    s.table = make(*n);
    s.arity = *n;
    return s;
  };
  if (auto s = builtin("parity", &TruthTable::parity)) return s;
  if (auto s = builtin("and", &TruthTable::conjunction)) return s;
  if (auto s = builtin("or", &TruthTable::disjunction)) return s;
  if (arg == "maj3") {
    t.table = TruthTable::majority3();
    t.arity = 3;
    return t;
  }
  if (arg.size() > 2 && arg[0] == '0' && (arg[1] == 'x' || arg[1] == 'X')) {
    t.table = TruthTable::from_hex(arg, vars);
    t.arity = t.table->num_vars();
    return t;
  }
  // Bit string: character j is f(a) with bin(a) = j.
  if (arg.size() >= 2 && (arg.size() & (arg.size() - 1)) == 0 &&
      std::all_of(arg.begin(), arg.end(),
                  [](char c) { return c == '0' || c == '1'; })) {
    std::vector<bool> bits;
    for (char c : arg) bits.push_back(c == '1');
    std::size_t n = 0;
    while ((std::size_t{1} << n) < arg.size()) ++n;
    t.table = TruthTable(n, std::move(bits));
    t.arity = n;
    return t;
  }
  return std::nullopt;
}

TruthArg parse_truth(const std::string& arg, std::optional<std::size_t> vars) {
  if (auto t = parse_inline_truth(arg, vars)) return *t;
  std::ifstream probe(arg);
  if (!probe) throw UsageError("unknown truth table '" + arg + "'");
  if (auto t = parse_inline_truth(trim(read_file(arg)), vars)) return *t;
  throw UsageError("file '" + arg + "' does not hold a truth table");
}

// ---------------------------------------------------------------------------
// Formula input

struct FormulaSource {
  std::string file;
  std::string expr;
  bool from_stdin = false;
};

void add_formula_options(CLI::App* sub, FormulaSource& src) {
  sub->add_option("--formula,--in", src.file, "S-expression formula file");
  sub->add_option("--expr", src.expr, "S-expression formula text");
  sub->add_flag("--stdin", src.from_stdin, "Read the formula from stdin");
}

bool has_formula(const FormulaSource& src) {
  return !src.file.empty() || !src.expr.empty() || src.from_stdin;
}

Formula load_formula(const FormulaSource& src, std::istream& in,
                     std::optional<std::size_t> arity) {
  const int given = !src.file.empty() + !src.expr.empty() + src.from_stdin;
  if (given != 1)
    throw UsageError("give exactly one of --formula, --expr, --stdin");
  std::string text;
  if (!src.file.empty()) {
    text = read_file(src.file);
  } else if (!src.expr.empty()) {
    text = src.expr;
  } else {
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return parse_formula(text, arity);
}

// ---------------------------------------------------------------------------
// Shared output helpers

std::string trit_str(Trit t) { return std::string(1, to_char(t)); }

std::string coord_name(VarStyle style, std::size_t arity, std::size_t coord) {
  return variable_name(style, arity, static_cast<std::uint32_t>(coord));
}

json formula_stats(const Formula& f) {
  return {{"size", size(f)},
          {"depth", depth(f)},
          {"alternation_depth", alternation_depth(f)}};
}

struct Context {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  bool json_out = false;
};

// ---------------------------------------------------------------------------
// Commands

struct EvalOpts {
  FormulaSource src;
  std::string input;
  std::optional<std::size_t> vars;
};

int cmd_eval(Context& c, const EvalOpts& o) {
  const Formula f = load_formula(o.src, c.in, o.vars);
  const TernaryWord alpha = TernaryWord::parse(o.input);
  const Trit v = eval(f, alpha);
  if (c.json_out) {
    c.out << json{{"input", alpha.str()}, {"value", trit_str(v)}}.dump() << '\n';
  } else {
    c.out << to_char(v) << '\n';
  }
  return kExitOk;
}

struct HazardOpts {
  FormulaSource src;
  std::string truth;
  std::optional<std::size_t> vars;
  std::optional<std::size_t> max_u;
  bool exhaustive = false;
  bool certify = false;
};

int cmd_hazards(Context& c, const HazardOpts& o) {
  if (o.exhaustive && o.certify)
    throw UsageError("--exhaustive and --certify are exclusive");
  std::optional<TruthArg> arg;
  if (!o.truth.empty()) arg = parse_truth(o.truth, o.vars);
  Formula f = load_formula(o.src, c.in,
                           arg ? std::optional(arg->arity) : std::nullopt);
  if (!arg) {
    if (f.style() != VarStyle::Mux)
      throw UsageError("--truth is required unless the formula uses s/x names");
    arg = parse_truth("mux" + std::to_string(f.mux_selectors()), std::nullopt);
  }

  const bool exhaustive =
      o.max_u || o.exhaustive ||
      (!o.certify && arg->arity <= kExhaustiveDefaultArity);
  std::vector<Hazard> hazards;
  std::optional<BoolWord> functional;
  if (exhaustive) {
    try {
      hazards = find_hazards(f, arg->require_table(), o.max_u).hazards;
    } catch (const FunctionalError& e) {
      functional = e.point();
    }
  } else {
    const ImplicantSet ones = arg->implicants();
    const ImplicantSet zeros = arg->implicates();
    CompiledFormula cf(f);
    auto scan = [&](const ImplicantSet& set, Trit want) {
      for (const TernaryWord& w : set) {
        const Trit got = cf.eval(w.trits());
        if (got == want) continue;
        if (is_stable(got) && !functional) {
          // A stable wrong value on a prime is wrong on its resolutions.
          std::vector<bool> bits(w.size());
          for (std::size_t i = 0; i < w.size(); ++i) bits[i] = w[i] == Trit::One;
          functional = BoolWord(std::move(bits));
        }
        hazards.push_back({w, got, want});
      }
    };
    scan(ones, Trit::One);
    scan(zeros, Trit::Zero);
    std::stable_sort(hazards.begin(), hazards.end(),
                     [](const Hazard& a, const Hazard& b) {
                       const auto ua = a.alpha.count_unstable();
                       const auto ub = b.alpha.count_unstable();
                       return ua != ub ? ua < ub : lex_less(a.alpha, b.alpha);
                     });
  }

  if (functional) {
    if (c.json_out) {
      c.out << json{{"mode", exhaustive ? "exhaustive" : "certify"},
                    {"functional_error", functional->str()}}
                   .dump()
            << '\n';
    } else {
      c.out << "functional error at " << functional->str() << '\n';
    }
    return kExitFailed;
  }
  if (c.json_out) {
    json list = json::array();
    for (const Hazard& h : hazards)
      list.push_back({{"alpha", h.alpha.str()},
                      {"formula", trit_str(h.formula_value)},
                      {"extension", trit_str(h.extension_value)}});
    c.out << json{{"mode", exhaustive ? "exhaustive" : "certify"},
                  {"hazard_free", hazards.empty()},
                  {"hazards", list}}
                 .dump()
          << '\n';
  } else {
    for (const Hazard& h : hazards)
      c.out << h.alpha.str() << " formula=" << to_char(h.formula_value)
            << " extension=" << to_char(h.extension_value) << '\n';
  }
  return hazards.empty() ? kExitOk : kExitFailed;
}

struct TruthOpts {
  std::string truth;
  std::optional<std::size_t> vars;
};

int cmd_primes(Context& c, const TruthOpts& o) {
  const TruthArg arg = parse_truth(o.truth, o.vars);
  const ImplicantSet ones = arg.implicants();
  const ImplicantSet zeros = arg.implicates();
  if (c.json_out) {
    json a = json::array(), b = json::array();
    for (const auto& w : ones) a.push_back(w.str());
    for (const auto& w : zeros) b.push_back(w.str());
    c.out << json{{"implicants", a}, {"implicates", b}}.dump() << '\n';
    return kExitOk;
  }
  c.out << "# prime implicants: " << ones.size() << '\n';
  for (const auto& w : ones) c.out << w.str() << '\n';
  c.out << "# prime implicates: " << zeros.size() << '\n';
  for (const auto& w : zeros) c.out << w.str() << '\n';
  return kExitOk;
}

void print_matrix(std::ostream& out, const CommMatrix& m, VarStyle style) {
  out << "rows\\cols";
  for (const auto& col : m.cols()) out << '\t' << col.str();
  out << '\n';
  for (std::size_t r = 0; r < m.num_rows(); ++r) {
    out << m.row(r).str();
    for (std::size_t col = 0; col < m.num_cols(); ++col) {
      out << '\t';
      const auto cell = m.cell(r, col);
      for (std::size_t k = 0; k < cell.size(); ++k)
        out << (k ? "," : "") << coord_name(style, m.num_vars(), cell[k]);
    }
    out << '\n';
  }
}

int cmd_kw_matrix(Context& c, const TruthOpts& o) {
  const TruthArg arg = parse_truth(o.truth, o.vars);
  const CommMatrix m = arg.matrix();
  if (c.json_out) {
    c.out << matrix_to_json(m) << '\n';
  } else {
    print_matrix(c.out, m, arg.style());
  }
  return kExitOk;
}

struct GameOpts {
  std::string truth;
  std::optional<std::size_t> vars;
  std::string matrix_file;
  std::string protocol_file;
  std::string rectangles_file;
  FormulaSource src;
  std::string alpha;
  std::string beta;
};

struct GameSetup {
  CommMatrix matrix;
  VarStyle style;
};

GameSetup load_game(const GameOpts& o) {
  if (!o.matrix_file.empty()) {
    if (!o.truth.empty()) throw UsageError("give --truth or --matrix, not both");
    CommMatrix m = matrix_from_json(read_file(o.matrix_file));
    return {std::move(m), VarStyle::Indexed};
  }
  if (o.truth.empty()) throw UsageError("--truth or --matrix is required");
  const TruthArg arg = parse_truth(o.truth, o.vars);
  return {arg.matrix(), arg.style()};
}

ProtocolTree load_protocol(const GameOpts& o, const GameSetup& g,
                           std::istream& in) {
  const int given = !o.protocol_file.empty() + has_formula(o.src);
  if (given != 1)
    throw UsageError("give exactly one of --protocol or a formula");
  if (!o.protocol_file.empty())
    return protocol_from_json(read_file(o.protocol_file), g.matrix, g.style);
  return formula_to_protocol(load_formula(o.src, in, g.matrix.num_vars()),
                             g.matrix);
}

int cmd_play(Context& c, const GameOpts& o) {
  const GameSetup g = load_game(o);
  const ProtocolTree p = load_protocol(o, g, c.in);
  const PlayOutcome r = play(p, g.matrix, TernaryWord::parse(o.alpha),
                             TernaryWord::parse(o.beta));
  const bool valid = g.matrix.cell_contains(r.row, r.col, r.coordinate);
  const std::string name = coord_name(g.style, g.matrix.num_vars(), r.coordinate);
  if (c.json_out) {
    c.out << json{{"coord", r.coordinate},
                  {"name", name},
                  {"row", g.matrix.row(r.row).str()},
                  {"col", g.matrix.col(r.col).str()},
                  {"valid", valid}}
                 .dump()
          << '\n';
  } else {
    c.out << name << '\n';
  }
  return valid ? kExitOk : kExitFailed;
}

std::vector<Rectangle> load_rectangles(const std::string& path,
                                       const CommMatrix& m) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
  std::vector<Rectangle> out;
  try {
    for (const json& r : j) {
      Rectangle rect;
      for (const json& w : r.at("rows")) {
        auto i = m.row_index(TernaryWord::parse(w.get<std::string>()));
        if (!i) throw UsageError("row " + w.get<std::string>() + " not in matrix");
        rect.rows.push_back(*i);
      }
      for (const json& w : r.at("cols")) {
        auto i = m.col_index(TernaryWord::parse(w.get<std::string>()));
        if (!i) throw UsageError("column " + w.get<std::string>() + " not in matrix");
        rect.cols.push_back(*i);
      }
      rect.coord = r.at("coord").get<std::size_t>();
      out.push_back(std::move(rect));
    }
  } catch (const json::exception& e) {
    throw ParseError(e.what(), 0);
  }
  return out;
}

int cmd_verify_partition(Context& c, const GameOpts& o) {
  const GameSetup g = load_game(o);
  PartitionCheck check;
  if (!o.rectangles_file.empty()) {
    if (!o.protocol_file.empty() || has_formula(o.src))
      throw UsageError("give one of --rectangles, --protocol or a formula");
    check = verify_rectangle_partition(g.matrix,
                                       load_rectangles(o.rectangles_file, g.matrix));
  } else {
    check = verify_partition(load_protocol(o, g, c.in), g.matrix);
  }
  if (c.json_out) {
    c.out << json{{"valid", check.ok},
                  {"rectangles", check.rectangles},
                  {"reason", check.reason}}
                 .dump()
          << '\n';
  } else if (check.ok) {
    c.out << "valid " << check.rectangles << '\n';
  } else {
    c.out << "invalid: " << check.reason << '\n';
  }
  return check.ok ? kExitOk : kExitFailed;
}

struct SynthOpts {
  std::size_t n = 0;
  std::string variant = "size";
  std::string out_file;
};

void emit_formula(Context& c, const Formula& f, const std::string& out_file,
                  json extra = json::object()) {
  const std::string text = print(f);
  if (!out_file.empty()) write_file(out_file, text + "\n");
  if (c.json_out) {
    json j = formula_stats(f);
    j["formula"] = text;
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    c.out << j.dump() << '\n';
  } else if (out_file.empty()) {
    c.out << text << '\n';
  }
}

int cmd_synth_mux(Context& c, const SynthOpts& o) {
  Formula f = [&] {
    if (o.variant == "size") return synth_size_optimal(o.n);
    if (o.variant == "depth") return synth_depth_optimal(o.n);
    if (o.variant == "alt2") return synth_alt2_depth_optimal(o.n);
    if (o.variant == "alt2-huffman") return synth_alt2_huffman(o.n);
    throw UsageError("unknown variant '" + o.variant +
                     "' (size, depth, alt2, alt2-huffman)");
  }();
  emit_formula(c, f, o.out_file, {{"n", o.n}, {"variant", o.variant}});
  return kExitOk;
}

int cmd_synth_universal(Context& c, const TruthOpts& o, const std::string& out) {
  const TruthArg arg = parse_truth(o.truth, o.vars);
  const TruthTable& t = arg.require_table();
  const Formula f = synth_universal(t);
  const bool ok = t.num_vars() > ExtensionTable::kMaxVars ||
                  certify_hazard_free(f, t);
  emit_formula(c, f, out, {{"certified", ok}});
  return ok ? kExitOk : kExitFailed;
}

struct DerivativeOpts {
  std::size_t n = 0;
  std::string point;
  std::string out_file;
};

int cmd_derivative(Context& c, const DerivativeOpts& o) {
  const BoolWord p = BoolWord::parse(o.point);
  if (o.n == 0 || o.n > 12 || p.size() != mux_arity(o.n))
    throw UsageError("--point needs n + 2^n bits");
  std::vector<bool> s, x;
  for (std::size_t i = 0; i < p.size(); ++i) (i < o.n ? s : x).push_back(p[i]);
  const Formula f =
      synth_derivative_formula(o.n, BoolWord(std::move(s)), BoolWord(std::move(x)));
  emit_formula(c, f, o.out_file);
  return kExitOk;
}

struct RankOpts {
  std::optional<std::size_t> subcube;
  std::string csv;
  bool limited = false;
};

int cmd_rank(Context& c, const RankOpts& o) {
  const int given = o.subcube.has_value() + !o.csv.empty() + o.limited;
  if (given != 1) throw UsageError("give exactly one of --subcube, --csv, --limited");
  const ZeroOneMatrix m = o.subcube    ? subcube_intersect_kronecker(*o.subcube)
                          : o.limited  ? limited_fixture_matrix()
                                       : from_csv(read_file(o.csv));
  const std::size_t r = exact_rank(m);
  if (c.json_out) {
    c.out << json{{"rows", m.rows()}, {"cols", m.cols()}, {"rank", r}}.dump()
          << '\n';
  } else {
    c.out << r << '\n';
  }
  return kExitOk;
}

int cmd_lower_bound(Context& c, std::size_t n) {
  const std::size_t rank = exact_rank(subcube_intersect_kronecker(n));
  const std::uint64_t bound = 2 * rank - 1;
  if (c.json_out) {
    c.out << json{{"n", n}, {"rank", rank}, {"lower_bound", bound}}.dump() << '\n';
  } else {
    c.out << bound << '\n';
  }
  return kExitOk;
}

int cmd_kraft(Context& c, std::size_t n, std::size_t d) {
  if (n == 0) throw UsageError("--n must be positive");
  const bool ok = kraft_feasible(n, d);
  if (c.json_out) {
    c.out << json{{"n", n}, {"d", d}, {"feasible", ok}}.dump() << '\n';
  } else {
    c.out << (ok ? "feasible" : "infeasible") << '\n';
  }
  return ok ? kExitOk : kExitFailed;
}

struct TransformOpts {
  FormulaSource src;
  std::string truth;
  std::optional<std::size_t> vars;
  std::size_t k = 1;
  bool stats = false;
  std::string out_file;
};

bool hazard_free(const Formula& f, const TruthTable& t) {
  try {
    if (t.num_vars() <= kExhaustiveDefaultArity) return find_hazards(f, t).empty();
    return certify_hazard_free(f, t);
  } catch (const FunctionalError&) {
    return false;
  }
}

void emit_transform(Context& c, const Formula& before, const Formula& after,
                    const TransformOpts& o, json extra) {
  if (o.stats && !c.json_out) {
    c.out << "size " << size(before) << " -> " << size(after) << ", depth "
          << depth(before) << " -> " << depth(after) << '\n';
    if (!o.out_file.empty()) write_file(o.out_file, print(after) + "\n");
    return;
  }
  extra["input"] = formula_stats(before);
  emit_formula(c, after, o.out_file, std::move(extra));
}

int cmd_depth_reduce(Context& c, const TransformOpts& o) {
  std::optional<TruthArg> arg;
  if (!o.truth.empty()) arg = parse_truth(o.truth, o.vars);
  const Formula f = load_formula(o.src, c.in,
                                 arg ? std::optional(arg->arity) : o.vars);
  const Formula g = depth_reduce(f);
  bool ok = true;
  json extra = json::object();
  if (arg) {
    const TruthTable& t = arg->require_table();
    const bool before = hazard_free(f, t);
    const bool after = hazard_free(g, t);
    extra["hazard_free_input"] = before;
    extra["hazard_free_output"] = after;
    ok = !before || after;
    if (!ok) c.err << "depth reduction introduced a hazard\n";
  }
  emit_transform(c, f, g, o, std::move(extra));
  return ok ? kExitOk : kExitFailed;
}

int cmd_kbit(Context& c, const TransformOpts& o) {
  std::optional<TruthArg> arg;
  if (!o.truth.empty()) arg = parse_truth(o.truth, o.vars);
  const Formula base = load_formula(o.src, c.in,
                                    arg ? std::optional(arg->arity) : o.vars);
  const TruthTable t = arg ? arg->require_table() : TruthTable::of_formula(base);
  const Formula g = kbit_hazard_free(t, o.k, base);
  const KbitBounds b = kbit_bounds(t.num_vars(), o.k, size(base), depth(base));
  const bool k_free = find_hazards(g, t, o.k).empty();
  const bool within = size(g) <= b.max_size && depth(g) <= b.max_depth;
  if (!k_free) c.err << "output has a hazard with at most " << o.k << " u's\n";
  if (!within) c.err << "output exceeds the size/depth bound\n";
  emit_transform(c, base, g, o,
                 {{"k", o.k},
                  {"k_hazard_free", k_free},
                  {"max_size", b.max_size},
                  {"max_depth", b.max_depth}});
  return k_free && within ? kExitOk : kExitFailed;
}

int cmd_report(Context& c, std::size_t n) {
  if (n == 0 || n > 6) throw UsageError("report supports 1 <= n <= 6");
  const ImplicantSet ones = mux_prime_implicants(n);
  const ImplicantSet zeros = mux_prime_implicates(n);
  std::uint64_t pow3 = 1;
  for (std::size_t i = 0; i < n; ++i) pow3 *= 3;

  const Formula so = synth_size_optimal(n);
  const Formula dopt = synth_depth_optimal(n);
  const Formula a2 = synth_alt2_depth_optimal(n);
  const Formula hf = synth_alt2_huffman(n);
  const std::size_t rank = exact_rank(subcube_intersect_kronecker(n));
  const std::uint64_t bound = 2 * rank - 1;
  // 2.25·3^n − n/2 − 1.25 = (9·3^n − 2n − 5) / 4.
  const std::uint64_t depth_opt_size = (9 * pow3 - 2 * n - 5) / 4;
  const std::uint64_t huffman_size =
      (std::uint64_t{1} << (2 * n)) + 2 * n * (pow3 / 3);
  const bool so_ok = certify_hazard_free(so, ones.words, zeros.words);
  const bool d_ok = certify_hazard_free(dopt, ones.words, zeros.words);
  const bool a2_ok = certify_hazard_free(a2, ones.words, zeros.words);
  const bool kraft_ok = n < 2 || (kraft_feasible(n, 2 * n + 2) &&
                                  !kraft_feasible(n, 2 * n + 1));

  const bool all = size(so) == 2 * pow3 - 1 && bound == size(so) &&
                   depth(so) == 3 * n && size(dopt) == depth_opt_size &&
                   depth(dopt) == 2 * n + 1 && size(hf) == huffman_size &&
                   alternation_depth(a2) <= 2 &&
                   (n == 1 || depth(a2) == 2 * n + 2) && so_ok && d_ok &&
                   a2_ok && kraft_ok;

  if (c.json_out) {
    c.out << json{{"n", n},
                  {"size_optimal", {{"size", size(so)}, {"depth", depth(so)},
                                    {"hazard_free", so_ok}}},
                  {"lower_bound", {{"rank", rank}, {"monorect", bound}}},
                  {"depth_optimal", {{"size", size(dopt)}, {"depth", depth(dopt)},
                                     {"closed_form_size", depth_opt_size},
                                     {"hazard_free", d_ok}}},
                  {"alt2_depth_optimal", {{"size", size(a2)}, {"depth", depth(a2)},
                                          {"alternation_depth", alternation_depth(a2)},
                                          {"hazard_free", a2_ok}}},
                  {"alt2_huffman", {{"size", size(hf)}, {"depth", depth(hf)}}},
                  {"kraft_threshold_ok", kraft_ok},
                  {"consistent", all}}
                 .dump()
          << '\n';
    return all ? kExitOk : kExitFailed;
  }
  auto yes = [](bool b) { return b ? "yes" : "NO"; };
  std::ostream& out = c.out;
  out << "MUX_" << n << " (" << mux_arity(n) << " variables, " << pow3
      << " prime implicants)\n";
  out << std::left;
  out << "  " << std::setw(20) << "size-optimal" << "size " << std::setw(6)
      << size(so) << "depth " << std::setw(4) << depth(so) << "hazard-free "
      << yes(so_ok) << '\n';
  out << "  " << std::setw(20) << "rank lower bound" << "rank " << std::setw(6)
      << rank << "2*rank-1 = " << bound << '\n';
  out << "  " << std::setw(20) << "depth-optimal" << "size " << std::setw(6)
      << size(dopt) << "depth " << std::setw(4) << depth(dopt)
      << "hazard-free " << yes(d_ok) << '\n';
  out << "  " << std::setw(20) << "alt-2 depth-optimal" << "size "
      << std::setw(6) << size(a2) << "depth " << std::setw(4) << depth(a2)
      << "hazard-free " << yes(a2_ok) << '\n';
  out << "  " << std::setw(20) << "alt-2 huffman" << "size " << std::setw(6)
      << size(hf) << "depth " << depth(hf) << '\n';
  out << "  bounds match: " << yes(bound == size(so))
      << ", all checks: " << yes(all) << '\n';
  return all ? kExitOk : kExitFailed;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::istream& in,
             std::ostream& out, std::ostream& err) {
  CLI::App app{"Hazard-free formula analysis and synthesis", "hazkw"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json_out = false;
  app.add_flag("--json", json_out, "Machine-readable output");

  EvalOpts eval_o;
  auto* eval_c = app.add_subcommand("eval", "Evaluate a formula on a ternary word");
  add_formula_options(eval_c, eval_o.src);
  eval_c->add_option("--input", eval_o.input, "Word over {0,u,1}")->required();
  eval_c->add_option("--vars", eval_o.vars, "Arity for v<k> formulas");

  HazardOpts hz_o;
  auto* hz_c = app.add_subcommand("hazards", "List the hazards of a formula");
  add_formula_options(hz_c, hz_o.src);
  hz_c->add_option("--truth", hz_o.truth, "Function: mux<n>, parity<n>, and<n>, or<n>, maj3, 0x.., bits, or a file");
  hz_c->add_option("--vars", hz_o.vars, "Arity for hex truth tables");
  hz_c->add_option("--max-u", hz_o.max_u, "Only inputs with at most this many u's");
  hz_c->add_flag("--exhaustive", hz_o.exhaustive, "Enumerate every input");
  hz_c->add_flag("--certify", hz_o.certify, "Check prime implicants/implicates only");

  TruthOpts primes_o;
  auto* primes_c = app.add_subcommand("primes", "Prime implicants and implicates");
  primes_c->add_option("--truth", primes_o.truth)->required();
  primes_c->add_option("--vars", primes_o.vars);

  TruthOpts kwm_o;
  auto* kwm_c = app.add_subcommand("kw-matrix", "Hazard-free KW communication matrix");
  kwm_c->add_option("--truth", kwm_o.truth)->required();
  kwm_c->add_option("--vars", kwm_o.vars);

  auto add_game = [](CLI::App* sub, GameOpts& o) {
    sub->add_option("--truth", o.truth);
    sub->add_option("--vars", o.vars);
    sub->add_option("--matrix", o.matrix_file, "Matrix JSON file");
    sub->add_option("--protocol", o.protocol_file, "Protocol JSON file");
    add_formula_options(sub, o.src);
  };
  GameOpts play_o;
  auto* play_c = app.add_subcommand("play", "Play the KW game with a protocol");
  add_game(play_c, play_o);
  play_c->add_option("--alpha", play_o.alpha, "Alice's implicant")->required();
  play_c->add_option("--beta", play_o.beta, "Bob's implicate")->required();

  GameOpts vp_o;
  auto* vp_c = app.add_subcommand("verify-partition",
                                  "Check a protocol or rectangle list tiles the matrix");
  add_game(vp_c, vp_o);
  vp_c->add_option("--rectangles", vp_o.rectangles_file, "Rectangle list JSON file");

  SynthOpts synth_o;
  auto* synth_c = app.add_subcommand("synth-mux", "Hazard-free MUX_n formula");
  synth_c->add_option("--n", synth_o.n)->required()->check(CLI::Range(1, 12));
  synth_c->add_option("--variant", synth_o.variant, "size, depth, alt2, alt2-huffman");
  synth_c->add_option("--out", synth_o.out_file);

  TruthOpts uni_o;
  std::string uni_out;
  auto* uni_c = app.add_subcommand("synth-universal",
                                   "Hazard-free formula for any function");
  uni_c->add_option("--truth", uni_o.truth)->required();
  uni_c->add_option("--vars", uni_o.vars);
  uni_c->add_option("--out", uni_out);

  DerivativeOpts der_o;
  auto* der_c = app.add_subcommand("derivative",
                                   "Monotone formula for a MUX_n hazard derivative");
  der_c->add_option("--n", der_o.n)->required();
  der_c->add_option("--point", der_o.point, "Boolean (s, x) of n + 2^n bits")->required();
  der_c->add_option("--out", der_o.out_file);

  RankOpts rank_o;
  auto* rank_c = app.add_subcommand("rank", "Exact rank of a 0/1 matrix");
  rank_c->add_option("--subcube", rank_o.subcube, "Subcube-intersection matrix of order n")
      ->check(CLI::Range(1, 8));
  rank_c->add_option("--csv", rank_o.csv, "CSV file of 0/1 entries");
  rank_c->add_flag("--limited", rank_o.limited, "The 16x16 limited-hazard block matrix");

  std::size_t lb_n = 0;
  auto* lb_c = app.add_subcommand("lower-bound", "Rank lower bound for MUX_n formula size");
  lb_c->add_option("--n", lb_n)->required()->check(CLI::Range(1, 8));

  std::size_t kraft_n = 0, kraft_d = 0;
  auto* kraft_c = app.add_subcommand("kraft", "Prefix-code feasibility for the MUX_n DNF");
  kraft_c->add_option("--n", kraft_n)->required();
  kraft_c->add_option("--d", kraft_d)->required();

  TransformOpts dr_o;
  auto* dr_c = app.add_subcommand("depth-reduce", "Balance a formula, keeping its ternary semantics");
  add_formula_options(dr_c, dr_o.src);
  dr_c->add_option("--truth", dr_o.truth, "Check hazard-freeness against this function");
  dr_c->add_option("--vars", dr_o.vars);
  dr_c->add_flag("--stats", dr_o.stats, "Print sizes and depths only");
  dr_c->add_option("--out", dr_o.out_file);

  TransformOpts kb_o;
  auto* kb_c = app.add_subcommand("kbit", "k-bit hazard-free formula from any formula");
  add_formula_options(kb_c, kb_o.src);
  kb_c->add_option("--k", kb_o.k)->required();
  kb_c->add_option("--truth", kb_o.truth, "Function (default: the base formula's)");
  kb_c->add_option("--vars", kb_o.vars);
  kb_c->add_flag("--stats", kb_o.stats, "Print sizes and depths only");
  kb_c->add_option("--out", kb_o.out_file);

  std::size_t report_n = 0;
  auto* report_c = app.add_subcommand("report", "Headline sizes, depths and certificates");
  report_c->add_option("--n", report_n)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Context c{in, out, err, json_out};
  try {
    if (eval_c->parsed()) return cmd_eval(c, eval_o);
    if (hz_c->parsed()) return cmd_hazards(c, hz_o);
    if (primes_c->parsed()) return cmd_primes(c, primes_o);
    if (kwm_c->parsed()) return cmd_kw_matrix(c, kwm_o);
    if (play_c->parsed()) return cmd_play(c, play_o);
    if (vp_c->parsed()) return cmd_verify_partition(c, vp_o);
    if (synth_c->parsed()) return cmd_synth_mux(c, synth_o);
    if (uni_c->parsed()) return cmd_synth_universal(c, uni_o, uni_out);
    if (der_c->parsed()) return cmd_derivative(c, der_o);
    if (rank_c->parsed()) return cmd_rank(c, rank_o);
    if (lb_c->parsed()) return cmd_lower_bound(c, lb_n);
    if (kraft_c->parsed()) return cmd_kraft(c, kraft_n, kraft_d);
    if (dr_c->parsed()) return cmd_depth_reduce(c, dr_o);
    if (kb_c->parsed()) return cmd_kbit(c, kb_o);
    if (report_c->parsed()) return cmd_report(c, report_n);
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailed;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    // Parse, arity and budget errors are all malformed requests.
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace hazkw::cli
