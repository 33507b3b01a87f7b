// Times parallel against serial evaluation on a replicated fixture corpus.

#include <CLI11.hpp>
#include <chrono>
#include <iostream>
#include <omp.h>

#include "rulecraft/evaluator.hpp"
#include "rulecraft/grammar.hpp"
#include "rulecraft/workspace.hpp"

using namespace rulecraft;
using Clock = std::chrono::steady_clock;

namespace {

const char* const kRules[] = {
    "class must have declaration statement with visibility \"private\" and function with name \"get...\"",
    "class with name \"!BaseRepository&&...Repository\" must have extension of \"BaseRepository\" and "
    "implementation of interface and function with name \"...Mapper\"",
    "function with type \"void\" of class with name \"...Controller\" must have name "
    "\"store||update||deposit||withdraw||destroy\"",
    "function of class with visibility \"public\" must have name \"get...\"",
};

template <class Fn>
double best_ms(int repeats, Fn&& fn) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    const auto t0 = Clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
  }
  return best;
}

bool same(const EvalResult& a, const EvalResult& b) {
  auto key = [](const MatchRecord& m) { return std::tie(m.file, m.span); };
  auto eq = [&](const std::vector<MatchRecord>& x, const std::vector<MatchRecord>& y) {
    return x.size() == y.size() &&
           std::equal(x.begin(), x.end(), y.begin(), [&](const auto& p, const auto& q) { return key(p) == key(q); });
  };
  return eq(a.satisfied, b.satisfied) && eq(a.violated, b.violated);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evaluation benchmark"};
  std::string corpus = RULECRAFT_BENCH_CORPUS;
  int copies = 200;
  int repeats = 5;
  app.add_option("--corpus", corpus, "Java project to replicate");
  app.add_option("--copies", copies, "Number of copies of the corpus");
  app.add_option("--repeats", repeats, "Timed runs per measurement (best is reported)");
  CLI11_PARSE(app, argc, argv);

  const ProjectIndex index = scan_project(corpus);
  std::vector<java::CodeTree> trees;
  trees.reserve(index.trees.size() * static_cast<std::size_t>(copies));
  for (int c = 0; c < copies; ++c) {
    for (const auto& t : index.trees) {
      trees.push_back(t);
      trees.back().path = "copy" + std::to_string(c) + "/" + t.path;
    }
  }
  std::cout << "files: " << trees.size() << ", threads: " << omp_get_max_threads() << "\n";
  bool ok = true;
  for (const char* text : kRules) {
    auto parsed = parse_rule(text);
    const QueryPair pair = compile(*parsed.rule);
    EvalResult serial, parallel;
    const double ts = best_ms(repeats, [&] { serial = evaluate_serial(pair, trees); });
    const double tp = best_ms(repeats, [&] { parallel = evaluate(pair, trees); });
    const bool match = same(serial, parallel);
    ok = ok && match;
    std::cout << "serial " << ts << " ms, parallel " << tp << " ms, speedup " << ts / tp
              << (match ? "" : "  MISMATCH") << "\n  " << render_rule(*parsed.rule) << "\n";
  }
  return ok ? 0 : 1;
}
