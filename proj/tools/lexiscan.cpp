// Command-line front end: build, query, bench, gen-queries, gen-lexicon,
// verify and dump.

#include "lexiscan/lexiscan.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>

namespace {

using namespace lexiscan;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct OpsArgs {
  std::string preset = "lev";
  std::string file;
};

struct SourceArgs {
  std::string lexicon;
  std::string index;
};

void add_ops_options(CLI::App* cmd, OpsArgs& a) {
  auto* p = cmd->add_option("--ops", a.preset, "Operation preset: lev, lev-transpose or lev-merge-split");
  auto* f = cmd->add_option("--ops-file", a.file, "Operation set file");
  p->excludes(f);
}

OperationSet load_ops(const OpsArgs& a) {
  if (!a.file.empty()) return OperationSet::parse(read_file(a.file));
  return OperationSet::preset(a.preset);
}

std::uint64_t effective_seed(std::uint64_t seed) {
  const char* env = std::getenv("LEXISCAN_SEED");
  if (!env || !*env) return seed;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || *env == '-') throw ArgumentError(std::string("LEXISCAN_SEED is not an unsigned integer: ") + env);
  return v;
}

Weight check_bound(long long b) {
  if (b < 0) throw ArgumentError("bound must be non-negative");
  return static_cast<Weight>(b);
}

std::vector<Word> read_patterns(const std::string& path) {
  std::vector<Word> out;
  const std::string text = read_file(path);
  std::size_t line = 0;
  std::size_t at = 0;
  while (at < text.size()) {
    std::size_t nl = text.find('\n', at);
    if (nl == std::string::npos) nl = text.size();
    ++line;
    std::string_view row(text.data() + at, nl - at);
    if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
    if (!row.empty()) {
      try {
        out.push_back(decode_utf8(row));
      } catch (const LoadError& e) {
        throw LoadError(path + ": line " + std::to_string(line) + ": " + e.what());
      }
    }
    at = nl + 1;
  }
  if (out.empty()) throw LoadError(path + ": no queries");
  return out;
}

void write_output(const std::string& path, const std::string& body) {
  if (path.empty() || path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LoadError("cannot write " + path);
  out << body;
  if (!out) throw LoadError("write failed: " + path);
}

// Loads whichever of lexicon and index was given and derives the other.
struct Loaded {
  Lexicon lexicon;
  Scdawg index;
};

Loaded load_source(const SourceArgs& a) {
  if (a.lexicon.empty() && a.index.empty()) throw ArgumentError("one of --lexicon or --index is required");
  Loaded out;
  if (!a.index.empty()) {
    out.index = load_index(a.index);
    out.lexicon = a.lexicon.empty() ? recover_lexicon(out.index) : load_lexicon_file(a.lexicon);
  } else {
    out.lexicon = load_lexicon_file(a.lexicon);
    out.index = build_index(out.lexicon);
  }
  if (out.lexicon.duplicates_dropped) {
    std::cerr << "note: dropped " << out.lexicon.duplicates_dropped << " duplicate entries\n";
  }
  return out;
}

int cmd_build(const std::string& lexicon, const std::string& out) {
  const auto lex = load_lexicon_file(lexicon);
  if (lex.duplicates_dropped) std::cerr << "note: dropped " << lex.duplicates_dropped << " duplicate entries\n";
  const auto t0 = std::chrono::steady_clock::now();
  const auto idx = build_index(lex);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  save_index(idx, out);
  std::cerr << "indexed " << lex.entries.size() << " entries (" << lex.total_size() << " symbols): "
            << idx.forward.state_count() << " states, " << idx.forward.transition_count() << " + "
            << idx.reverse.transition_count() << " transitions in " << secs << " s\n";
  return 0;
}

struct QueryArgs {
  SourceArgs source;
  OpsArgs ops;
  std::string pattern;
  long long bound = 0;
  std::string method = "new";
  bool no_prune = false;
  bool bottom_up = false;
  bool include_substrings = false;
};

int cmd_query(const QueryArgs& a) {
  const Weight b = check_bound(a.bound);
  const OperationSet ops = load_ops(a.ops);
  const Word pattern = decode_utf8(a.pattern);
  const Loaded src = load_source(a.source);
  std::string out;
  if (a.method == "new") {
    SearchOptions opt;
    opt.positional_pruning = !a.no_prune;
    opt.bottom_up = a.bottom_up;
    opt.include_substrings = a.include_substrings;
    const auto res = Searcher(src.index, ops).solve(pattern, b, opt);
    write_matches(res.matches, out);
    if (a.include_substrings) {
      for (const auto& m : res.substrings) {
        out += "substring\t" + encode_utf8(m.entry) + '\t' + std::to_string(m.distance) + '\n';
      }
    }
  } else {
    if (a.include_substrings) throw ArgumentError("--include-substrings needs --method new");
    const Trie fwd = Trie::build(src.lexicon.entries);
    const Trie bwd = a.method == "fb" ? build_reverse_trie(src.lexicon) : Trie{};
    const BenchSetup setup{&src.lexicon, &src.index, &fwd, &bwd, nullptr, &ops};
    write_matches(make_method(a.method, setup)(pattern, b), out);
  }
  std::cout << out;
  return 0;
}

struct GenQueriesArgs {
  SourceArgs source;
  OpsArgs ops;
  long long bound = 1;
  std::size_t count = 1000;
  std::uint64_t seed = 1;
  std::size_t multiplier = 3;
  std::string output;
};

int cmd_gen_queries(const GenQueriesArgs& a) {
  const OperationSet ops = load_ops(a.ops);
  const Lexicon lex = a.source.lexicon.empty() ? load_source(a.source).lexicon : load_lexicon_file(a.source.lexicon);
  const auto qs = generate_queries(lex, ops, {check_bound(a.bound), a.count, effective_seed(a.seed), a.multiplier});
  std::string out;
  for (const auto& q : qs) out += encode_utf8(q.pattern) + '\n';
  write_output(a.output, out);
  return 0;
}

struct GenLexiconArgs {
  std::string distribution = "uniform";
  std::size_t entries = 1000;
  double average_length = 10;
  std::size_t alphabet = 99;
  std::uint64_t seed = 1;
  std::string output;
};

int cmd_gen_lexicon(const GenLexiconArgs& a) {
  SynthSpec spec;
  if (a.distribution == "uniform") {
    spec.distribution = SymbolDistribution::uniform;
  } else if (a.distribution == "binomial") {
    spec.distribution = SymbolDistribution::binomial;
  } else {
    throw ArgumentError("unknown distribution '" + a.distribution + "' (expected uniform or binomial)");
  }
  spec.entries = a.entries;
  spec.average_length = a.average_length;
  spec.alphabet_size = a.alphabet;
  spec.seed = effective_seed(a.seed);
  const auto lex = generate_lexicon(spec);
  std::string out;
  for (const auto& w : lex.entries) out += encode_utf8(w) + '\n';
  write_output(a.output, out);
  return 0;
}

struct BenchArgs {
  SourceArgs source;
  OpsArgs ops;
  std::string queries;
  std::string perfect_queries;
  long long bound = 1;
  std::size_t count = 1000;
  std::uint64_t seed = 1;
  std::vector<std::string> methods = {"ideal", "new", "fb", "oflazer"};
  std::size_t repeat = 3;
  std::string output;
  bool no_header = false;
};

int cmd_bench(const BenchArgs& a) {
  const Weight b = check_bound(a.bound);
  const OperationSet ops = load_ops(a.ops);
  const Loaded src = load_source(a.source);
  std::vector<Word> queries;
  if (!a.queries.empty()) {
    queries = read_patterns(a.queries);
  } else {
    for (auto& q : generate_queries(src.lexicon, ops, {b, a.count, effective_seed(a.seed), 3})) {
      queries.push_back(std::move(q.pattern));
    }
  }
  auto wants = [&](std::string_view m) { return std::find(a.methods.begin(), a.methods.end(), m) != a.methods.end(); };
  const Trie fwd = Trie::build(src.lexicon.entries);
  const Trie bwd = wants("fb") ? build_reverse_trie(src.lexicon) : Trie{};
  std::unique_ptr<PerfectIndex> perfect;
  if (wants("ideal")) {
    const auto covered = a.perfect_queries.empty() ? queries : read_patterns(a.perfect_queries);
    perfect = std::make_unique<PerfectIndex>(PerfectIndex::build(src.lexicon, ops, covered, b));
  }
  const BenchSetup setup{&src.lexicon, &src.index, &fwd, &bwd, perfect.get(), &ops};
  const auto report = run_benchmark(setup, a.methods, queries, b, a.repeat);
  write_output(a.output, report.csv(!a.no_header));
  return 0;
}

struct VerifyArgs {
  SourceArgs source;
  OpsArgs ops;
  long long bound = 1;
  std::size_t samples = 200;
  std::uint64_t seed = 1;
  bool no_prune = false;
  bool bottom_up = false;
};

int cmd_verify(const VerifyArgs& a) {
  const Weight b = check_bound(a.bound);
  const OperationSet ops = load_ops(a.ops);
  const Loaded src = load_source(a.source);
  SearchOptions opt;
  opt.positional_pruning = !a.no_prune;
  opt.bottom_up = a.bottom_up;
  const auto rep = verify_equivalence(src.lexicon, src.index, ops, b, a.samples, effective_seed(a.seed), opt);
  if (!rep.passed) {
    std::cerr << "verification failed after " << rep.checked << " queries\n" << rep.counterexample;
    return kExitFailure;
  }
  std::cout << "ok\t" << rep.checked << '\n';
  return 0;
}

std::string label(WordView w) { return encode_utf8(w, true); }

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

// Reverse-automaton edges drawn between the paired forward states, with the
// label read in forward orientation (the string prepended on the left).
template <typename F>
void for_each_reverse_edge(const Scdawg& idx, F&& f) {
  for (std::uint32_t r = 0; r < idx.reverse.state_count(); ++r) {
    for (const auto& e : idx.reverse.out_edges(r)) {
      const WordView text(idx.reverse.text);
      Word lab(text.substr(e.start, e.length));
      std::reverse(lab.begin(), lab.end());
      f(idx.b_inv[r], lab, idx.b_inv[e.target]);
    }
  }
}

int cmd_dump(const std::string& path, bool dot) {
  if (path.empty()) throw ArgumentError("--index must not be empty");
  const Scdawg idx = load_index(path);
  const Cdawg& a = idx.forward;
  const WordView text(a.text);
  std::ostringstream out;
  if (dot) {
    out << "digraph scdawg {\n  rankdir=LR;\n  node [shape=box];\n";
    for (std::uint32_t q = 0; q < a.state_count(); ++q) {
      const std::string c = q == 0 ? "ε" : label(a.canonical(q));
      out << "  s" << q << " [label=\"" << q << ": " << dot_escape(c) << "\"];\n";
    }
    for (std::uint32_t q = 0; q < a.state_count(); ++q) {
      for (const auto& e : a.out_edges(q)) {
        out << "  s" << q << " -> s" << e.target << " [label=\"" << dot_escape(label(text.substr(e.start, e.length)))
            << "\"];\n";
      }
    }
    for_each_reverse_edge(idx, [&](std::uint32_t from, const Word& lab, std::uint32_t to) {
      out << "  s" << from << " -> s" << to << " [style=dashed, label=\"" << dot_escape(label(lab)) << "\"];\n";
    });
    out << "}\n";
  } else {
    out << "states\t" << a.state_count() << '\n';
    for (std::uint32_t q = 0; q < a.state_count(); ++q) {
      out << "state\t" << q << '\t' << a.length[q] << '\t' << label(a.canonical(q)) << '\n';
    }
    for (std::uint32_t q = 0; q < a.state_count(); ++q) {
      for (const auto& e : a.out_edges(q)) {
        out << "forward\t" << q << '\t' << label(text.substr(e.start, e.length)) << '\t' << e.target << '\n';
      }
    }
    for_each_reverse_edge(idx, [&](std::uint32_t from, const Word& lab, std::uint32_t to) {
      out << "reverse\t" << from << '\t' << label(lab) << '\t' << to << '\n';
    });
  }
  std::cout << out.str();
  return 0;
}

void add_source_options(CLI::App* cmd, SourceArgs& s) {
  cmd->add_option("--lexicon", s.lexicon, "Lexicon file (one UTF-8 entry per line)");
  cmd->add_option("--index", s.index, "Index file written by build");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate lexicon search over a symmetric compact DAWG"};
  app.require_subcommand(1);

  std::string build_lexicon, build_out;
  auto* build = app.add_subcommand("build", "Build and save an index");
  build->add_option("--lexicon", build_lexicon, "Lexicon file")->required();
  build->add_option("--out", build_out, "Index output path")->required();

  QueryArgs q;
  auto* query = app.add_subcommand("query", "Find all entries within the bound");
  add_source_options(query, q.source);
  add_ops_options(query, q.ops);
  query->add_option("--pattern", q.pattern, "Query pattern")->required();
  query->add_option("--bound", q.bound, "Distance bound")->required();
  query->add_option("--method", q.method, "new, fb, oflazer or brute")
      ->check(CLI::IsMember({"new", "fb", "oflazer", "brute"}));
  query->add_flag("--no-prune", q.no_prune, "Disable positional pruning");
  query->add_flag("--bottom-up", q.bottom_up, "Evaluate the query tree bottom-up");
  query->add_flag("--include-substrings", q.include_substrings, "Also print substring solutions");

  GenQueriesArgs gq;
  auto* gen_queries = app.add_subcommand("gen-queries", "Generate query patterns from lexicon entries");
  add_source_options(gen_queries, gq.source);
  add_ops_options(gen_queries, gq.ops);
  gen_queries->add_option("--bound", gq.bound, "Operation budget per pattern");
  gen_queries->add_option("--count", gq.count, "Number of patterns");
  gen_queries->add_option("--seed", gq.seed, "Random seed");
  gen_queries->add_option("--min-length-multiplier", gq.multiplier, "Patterns have length >= multiplier * bound");
  gen_queries->add_option("--output", gq.output, "Output file (default stdout)");

  GenLexiconArgs gl;
  auto* gen_lexicon = app.add_subcommand("gen-lexicon", "Generate a synthetic lexicon");
  gen_lexicon->add_option("--distribution", gl.distribution, "uniform or binomial");
  gen_lexicon->add_option("--entries", gl.entries, "Number of distinct entries");
  gen_lexicon->add_option("--average-length", gl.average_length, "Mean entry length");
  gen_lexicon->add_option("--alphabet", gl.alphabet, "Alphabet size");
  gen_lexicon->add_option("--seed", gl.seed, "Random seed");
  gen_lexicon->add_option("--output", gl.output, "Output file (default stdout)");

  BenchArgs bq;
  auto* bench = app.add_subcommand("bench", "Time search methods on a query set");
  add_source_options(bench, bq.source);
  add_ops_options(bench, bq.ops);
  bench->add_option("--queries", bq.queries, "Query file (default: generated)");
  bench->add_option("--perfect-queries", bq.perfect_queries, "Queries covered by the perfect index (default: --queries)");
  bench->add_option("--bound", bq.bound, "Distance bound");
  bench->add_option("--count", bq.count, "Generated query count");
  bench->add_option("--seed", bq.seed, "Query generation seed");
  bench->add_option("--methods", bq.methods, "Methods to compare")->delimiter(',');
  bench->add_option("--repeat", bq.repeat, "Timed passes per method");
  bench->add_option("--output", bq.output, "CSV output file (default stdout)");
  bench->add_flag("--no-header", bq.no_header, "Omit the CSV header");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check the index search against brute force");
  add_source_options(verify, va.source);
  add_ops_options(verify, va.ops);
  verify->add_option("--bound", va.bound, "Distance bound");
  verify->add_option("--samples", va.samples, "Number of generated queries");
  verify->add_option("--seed", va.seed, "Random seed");
  verify->add_flag("--no-prune", va.no_prune, "Disable positional pruning");
  verify->add_flag("--bottom-up", va.bottom_up, "Evaluate the query tree bottom-up");

  std::string dump_index;
  bool dump_dot = false;
  auto* dump = app.add_subcommand("dump", "Print the states and transitions of an index");
  dump->add_option("--index", dump_index, "Index file")->required();
  dump->add_flag("--dot", dump_dot, "Emit a Graphviz graph");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*build) return cmd_build(build_lexicon, build_out);
    if (*query) return cmd_query(q);
    if (*gen_queries) return cmd_gen_queries(gq);
    if (*gen_lexicon) return cmd_gen_lexicon(gl);
    if (*bench) return cmd_bench(bq);
    if (*verify) return cmd_verify(va);
    if (*dump) return cmd_dump(dump_index, dump_dot);
  } catch (const CorrectnessError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const CoverageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
