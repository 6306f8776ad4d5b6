#pragma once

#include "lexiscan/baselines.hpp"
#include "lexiscan/scdawg.hpp"
#include "lexiscan/search.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <unordered_set>

namespace lexiscan {

class CorrectnessError : public Error {
  using Error::Error;
};

struct QuerySpec {
  Weight bound = 1;
  std::size_t count = 100;
  std::uint64_t seed = 1;
  std::size_t min_length_multiplier = 3;
};

struct GeneratedQuery {
  Word pattern;
  Word source;
};

namespace detail {

// One edit planned on the source word: replace source[at, at + width) by rhs.
struct PlannedEdit {
  std::size_t at;
  std::size_t width;
  Word rhs;
};

struct EditKind {
  std::optional<OpClass> cls;
  const Operation* op = nullptr;  // explicit operation when cls is empty
  Weight weight;
};

inline bool overlaps(const std::vector<PlannedEdit>& edits, std::size_t at, std::size_t width) {
  for (const auto& e : edits) {
    if (width == 0 && e.width == 0) {
      if (e.at == at) return true;
    } else if (width == 0) {
      if (at > e.at && at < e.at + e.width) return true;
    } else if (e.width == 0) {
      if (e.at > at && e.at < at + width) return true;
    } else if (at < e.at + e.width && e.at < at + width) {
      return true;
    }
  }
  return false;
}

inline Word apply_edits(const Word& w, std::vector<PlannedEdit> edits) {
  std::sort(edits.begin(), edits.end(), [](const PlannedEdit& a, const PlannedEdit& b) {
    return std::tie(a.at, a.width) < std::tie(b.at, b.width);
  });
  Word out;
  std::size_t k = 0;
  for (const auto& e : edits) {
    out.append(w, k, e.at - k);
    out += e.rhs;
    k = e.at + e.width;
  }
  out.append(w, k);
  return out;
}

}  // namespace detail

/// Patterns derived from random entries by random non-identity operations at
/// non-overlapping positions, spending a total weight of at most b.
inline std::vector<GeneratedQuery> generate_queries(const Lexicon& lex, const OperationSet& ops,
                                                    const QuerySpec& spec) {
  if (spec.count == 0) throw GenerationError("query count must be positive");
  const std::size_t min_len = spec.min_length_multiplier * spec.bound;
  std::vector<const Word*> pool;
  for (const auto& w : lex.entries) {
    if (w.size() >= std::max<std::size_t>(min_len, 1)) pool.push_back(&w);
  }
  if (pool.empty()) {
    throw GenerationError("no entry has length >= " + std::to_string(min_len) + " (needed for bound " +
                          std::to_string(spec.bound) + "); 0 of " + std::to_string(lex.entries.size()) +
                          " entries qualify");
  }
  const auto alpha_set = lex.alphabet();
  const std::vector<Symbol> alphabet(alpha_set.begin(), alpha_set.end());
  const auto explicit_ops = ops.explicit_operations();

  std::vector<detail::EditKind> kinds;
  for (std::size_t c = 0; c < kOpClassCount; ++c) {
    if (auto w = ops.class_weight(static_cast<OpClass>(c))) kinds.push_back({static_cast<OpClass>(c), nullptr, *w});
  }
  for (const auto& op : explicit_ops) kinds.push_back({std::nullopt, &op, op.weight});
  if (kinds.empty() && spec.bound > 0) throw GenerationError("operation set has no operations");

  std::mt19937_64 rng(spec.seed);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  auto other_symbol = [&](Symbol not_this) -> std::optional<Symbol> {
    if (alphabet.size() < 2) return std::nullopt;
    Symbol s;
    do s = alphabet[pick(alphabet.size())];
    while (s == not_this);
    return s;
  };

  // Tries to plan one edit of the given kind.
  auto plan = [&](const Word& w, const detail::EditKind& kind,
                  std::vector<detail::PlannedEdit>& edits) -> bool {
    for (int attempt = 0; attempt < 8; ++attempt) {
      if (!kind.cls) {
        const Operation& op = *kind.op;
        if (op.lhs.size() > w.size()) return false;
        const std::size_t at = pick(w.size() - op.lhs.size() + 1);
        if (w.compare(at, op.lhs.size(), op.lhs) != 0 || detail::overlaps(edits, at, op.lhs.size())) continue;
        edits.push_back({at, op.lhs.size(), op.rhs});
        return true;
      }
      switch (*kind.cls) {
        case OpClass::substitute: {
          const std::size_t at = pick(w.size());
          auto s = other_symbol(w[at]);
          if (!s || detail::overlaps(edits, at, 1)) continue;
          edits.push_back({at, 1, Word(1, *s)});
          return true;
        }
        case OpClass::insert: {
          const std::size_t at = pick(w.size() + 1);
          if (detail::overlaps(edits, at, 0)) continue;
          edits.push_back({at, 0, Word(1, alphabet[pick(alphabet.size())])});
          return true;
        }
        case OpClass::remove: {
          const std::size_t at = pick(w.size());
          if (detail::overlaps(edits, at, 1)) continue;
          edits.push_back({at, 1, Word()});
          return true;
        }
        case OpClass::transpose: {
          if (w.size() < 2) return false;
          const std::size_t at = pick(w.size() - 1);
          if (w[at] == w[at + 1] || detail::overlaps(edits, at, 2)) continue;
          edits.push_back({at, 2, Word{w[at + 1], w[at]}});
          return true;
        }
        case OpClass::merge: {
          if (w.size() < 2) return false;
          const std::size_t at = pick(w.size() - 1);
          if (detail::overlaps(edits, at, 2)) continue;
          edits.push_back({at, 2, Word(1, alphabet[pick(alphabet.size())])});
          return true;
        }
        case OpClass::split: {
          const std::size_t at = pick(w.size());
          if (detail::overlaps(edits, at, 1)) continue;
          edits.push_back({at, 1, Word{alphabet[pick(alphabet.size())], alphabet[pick(alphabet.size())]}});
          return true;
        }
      }
    }
    return false;
  };

  std::vector<GeneratedQuery> out;
  out.reserve(spec.count);
  std::size_t failures = 0;
  while (out.size() < spec.count) {
    const Word& w = *pool[pick(pool.size())];
    std::vector<detail::PlannedEdit> edits;
    Weight budget = spec.bound;
    for (int tries = 0; budget > 0 && tries < 64; ++tries) {
      const auto& kind = kinds[pick(kinds.size())];
      if (kind.weight > budget) continue;
      if (plan(w, kind, edits)) budget -= kind.weight;
    }
    Word p = detail::apply_edits(w, edits);
    if (p.size() < min_len || p.empty()) {
      if (++failures > 1000 * spec.count) throw GenerationError("could not generate long enough patterns");
      continue;
    }
    out.push_back({std::move(p), w});
  }
  return out;
}

enum class SymbolDistribution { uniform, binomial };

struct SynthSpec {
  SymbolDistribution distribution = SymbolDistribution::uniform;
  std::size_t entries = 1000;
  double average_length = 10;
  std::size_t alphabet_size = 99;
  std::uint64_t seed = 1;
};

/// Printable symbols used by synthetic lexica: '!' upward, skipping DEL and
/// the C1 control range.
inline Symbol synthetic_symbol(std::size_t k) {
  Symbol s = static_cast<Symbol>(0x21 + k);
  if (s >= 0x7F) s += 0xC0 - 0x7F;
  return s;
}

inline Lexicon generate_lexicon(const SynthSpec& spec) {
  if (spec.alphabet_size < 2) throw GenerationError("alphabet size must be at least 2");
  if (spec.entries == 0) throw GenerationError("entry count must be positive");
  if (spec.average_length <= 0) throw GenerationError("average length must be positive");
  std::mt19937_64 rng(spec.seed);
  std::poisson_distribution<std::size_t> length(spec.average_length);
  std::uniform_int_distribution<std::size_t> uniform(0, spec.alphabet_size - 1);
  std::binomial_distribution<std::size_t> binomial(spec.alphabet_size - 1, 0.5);

  std::vector<Word> words;
  std::unordered_set<Word> seen;
  std::size_t rejected = 0;
  while (words.size() < spec.entries) {
    const std::size_t n = length(rng);
    if (n == 0) continue;
    Word w(n, 0);
    for (auto& s : w) {
      s = synthetic_symbol(spec.distribution == SymbolDistribution::uniform ? uniform(rng) : binomial(rng));
    }
    if (!seen.insert(w).second) {
      if (++rejected > 100 * spec.entries) throw GenerationError("too many duplicate entries; enlarge the alphabet or length");
      continue;
    }
    words.push_back(std::move(w));
  }
  return Lexicon::from_words(std::move(words));
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ull) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline void write_matches(const std::vector<MatchResult>& m, std::string& sink) {
  for (const auto& r : m) {
    sink += encode_utf8(r.entry);
    sink += '\t';
    sink += std::to_string(r.distance);
    sink += '\n';
  }
}

/// Everything the methods under comparison need.
struct BenchSetup {
  const Lexicon* lexicon = nullptr;
  const Scdawg* index = nullptr;
  const Trie* forward_trie = nullptr;
  const Trie* backward_trie = nullptr;
  const PerfectIndex* perfect = nullptr;
  const OperationSet* ops = nullptr;
};

using QueryMethod = std::function<std::vector<MatchResult>(WordView, Weight)>;

inline QueryMethod make_method(const std::string& name, const BenchSetup& s) {
  if (name == "ideal") {
    if (!s.perfect) throw ConfigError("method ideal needs a perfect index");
    return [p = s.perfect](WordView q, Weight) { return p->lookup(q); };
  }
  if (name == "new") {
    if (!s.index) throw ConfigError("method new needs an index");
    auto searcher = std::make_shared<Searcher>(*s.index, *s.ops);
    return [searcher](WordView q, Weight b) { return searcher->solve(q, b).matches; };
  }
  if (name == "fb") {
    if (!s.forward_trie || !s.backward_trie) throw ConfigError("method fb needs both tries");
    return [s](WordView q, Weight b) { return forward_backward_search(*s.forward_trie, *s.backward_trie, *s.ops, q, b); };
  }
  if (name == "oflazer") {
    if (!s.forward_trie) throw ConfigError("method oflazer needs a trie");
    return [s](WordView q, Weight b) { return oflazer_search(*s.forward_trie, *s.ops, q, b); };
  }
  if (name == "brute") {
    if (!s.lexicon) throw ConfigError("method brute needs the lexicon");
    return [s](WordView q, Weight b) { return brute_force_search(*s.lexicon, *s.ops, q, b); };
  }
  throw ConfigError("unknown method '" + name + "' (expected ideal, new, fb, oflazer or brute)");
}

struct MethodReport {
  std::string method;
  double mean_us = 0;
  double median_us = 0;
  std::size_t total_answers = 0;
  std::uint64_t checksum = 0;
  double ratio_vs_ideal = 0;
};

struct BenchReport {
  Weight bound = 0;
  std::size_t queries = 0;
  std::vector<MethodReport> methods;

  const MethodReport* find(std::string_view name) const {
    for (const auto& m : methods) {
      if (m.method == name) return &m;
    }
    return nullptr;
  }

  std::string csv(bool header = true) const {
    std::ostringstream out;
    if (header) out << "method,bound,queries,mean_us,median_us,total_answers,checksum,ratio_vs_ideal\n";
    for (const auto& m : methods) {
      out << m.method << ',' << bound << ',' << queries << ',' << m.mean_us << ',' << m.median_us << ','
          << m.total_answers << ',' << std::hex << m.checksum << std::dec << ',' << m.ratio_vs_ideal << '\n';
    }
    return out.str();
  }
};

/// Times each method over the query set. Every method is run once untimed
/// and must produce the same answers before any timing is reported; output
/// serialization is part of the measured time.
inline BenchReport run_benchmark(const BenchSetup& setup, const std::vector<std::string>& methods,
                                 const std::vector<Word>& queries, Weight bound, std::size_t repeat = 3) {
  if (queries.empty()) throw ConfigError("benchmark needs at least one query");
  repeat = std::max<std::size_t>(repeat, 1);
  BenchReport report;
  report.bound = bound;
  report.queries = queries.size();

  std::vector<QueryMethod> runners;
  for (const auto& m : methods) runners.push_back(make_method(m, setup));

  // Warm-up pass doubles as the correctness gate.
  std::string sink;
  for (std::size_t k = 0; k < runners.size(); ++k) {
    MethodReport r;
    r.method = methods[k];
    std::uint64_t h = fnv1a("");
    for (const auto& q : queries) {
      sink.clear();
      const auto answers = runners[k](q, bound);
      r.total_answers += answers.size();
      write_matches(answers, sink);
      sink += '\n';
      h = fnv1a(sink, h);
    }
    r.checksum = h;
    report.methods.push_back(r);
  }
  for (const auto& r : report.methods) {
    if (r.checksum != report.methods.front().checksum || r.total_answers != report.methods.front().total_answers) {
      throw CorrectnessError("answer mismatch: " + r.method + " disagrees with " + report.methods.front().method);
    }
  }

  for (std::size_t k = 0; k < runners.size(); ++k) {
    std::vector<double> samples;
    samples.reserve(queries.size() * repeat);
    double total = 0;
    for (std::size_t pass = 0; pass < repeat; ++pass) {
      for (const auto& q : queries) {
        const auto t0 = std::chrono::steady_clock::now();
        sink.clear();
        write_matches(runners[k](q, bound), sink);
        const auto t1 = std::chrono::steady_clock::now();
        const double us = std::chrono::duration<double, std::micro>(t1 - t0).count();
        samples.push_back(us);
        total += us;
      }
    }
    std::nth_element(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(samples.size() / 2), samples.end());
    report.methods[k].mean_us = total / static_cast<double>(samples.size());
    report.methods[k].median_us = samples[samples.size() / 2];
  }
  if (const MethodReport* ideal = report.find("ideal"); ideal && ideal->mean_us > 0) {
    const double base = ideal->mean_us;
    for (auto& m : report.methods) m.ratio_vs_ideal = m.mean_us / base;
  }
  return report;
}

struct VerificationReport {
  bool passed = true;
  std::size_t checked = 0;
  std::string counterexample;
};

/// Compares the index search against brute force on generated queries and
/// stops at the first disagreement.
inline VerificationReport verify_equivalence(const Lexicon& lex, const Scdawg& index, const OperationSet& ops,
                                             Weight bound, std::size_t samples, std::uint64_t seed,
                                             const SearchOptions& options = {}) {
  VerificationReport rep;
  const auto queries = generate_queries(lex, ops, {bound, samples, seed, 3});
  const Searcher searcher(index, ops);
  for (const auto& q : queries) {
    const auto expected = brute_force_search(lex, ops, q.pattern, bound);
    const auto got = searcher.solve(q.pattern, bound, options).matches;
    ++rep.checked;
    if (got != expected) {
      std::string e, g;
      write_matches(expected, e);
      write_matches(got, g);
      rep.passed = false;
      rep.counterexample = "pattern '" + encode_utf8(q.pattern) + "' bound " + std::to_string(bound) +
                           "\nexpected:\n" + e + "got:\n" + g;
      return rep;
    }
  }
  return rep;
}

}  // namespace lexiscan
