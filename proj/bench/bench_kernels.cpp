// Serial reference vs OpenMP kernels: brute-force stable models, completion
// truth tables, and graph-problem counting. Results must agree.

#include "microasp/grounder.hpp"
#include "microasp/oracle.hpp"
#include "microasp/parser.hpp"
#include "microasp/theorybase.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace microasp;

namespace {

double time_it(int reps, const std::function<void()>& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto start = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    return best;
}

bool report(const char* name, int reps, const std::function<std::size_t()>& serial,
            const std::function<std::size_t()>& parallel) {
    std::size_t a = 0, b = 0;
    const double ts = time_it(reps, [&] { a = serial(); });
    const double tp = time_it(reps, [&] { b = parallel(); });
    std::printf("%-40s serial %9.4f s  openmp %9.4f s  speedup %5.2fx  result %zu%s\n", name, ts, tp, ts / tp, a,
                a == b ? "" : "  MISMATCH");
    return a == b;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compare serial and OpenMP kernels"};
    bool quick = false;
    int reps = 3;
    app.add_flag("--quick", quick, "Small instances, one repetition");
    app.add_option("--reps", reps, "Repetitions, best time is reported");
    CLI11_PARSE(app, argc, argv);
    if (quick) reps = 1;

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif

    bool ok = true;
    // {a_i; b_i} choices with constraints linking neighbours
    const int pairs = quick ? 6 : 9;
    std::string text;
    for (int i = 1; i <= pairs; ++i) {
        text += "{ a" + std::to_string(i) + "; b" + std::to_string(i) + " }.\n";
        if (i > 1) text += ":- a" + std::to_string(i - 1) + ", a" + std::to_string(i) + ".\n";
    }
    const auto choice_gp = ground(parse_program(text));
    ok &= report("enumerate_bruteforce", reps, [&] { return enumerate_bruteforce_serial(choice_gp, 64).models.size(); },
                 [&] { return enumerate_bruteforce(choice_gp, 64).models.size(); });

    // even loops: 2^(n/2) supported models over n atoms
    const int loops = quick ? 6 : 9;
    std::string even;
    for (int i = 1; i <= loops; ++i) {
        const auto p = "p" + std::to_string(i), q = "q" + std::to_string(i);
        even += p + " :- not " + q + ".\n" + q + " :- not " + p + ".\n";
    }
    const auto completion = clark_completion(ground(parse_program(even)));
    ok &= report("supported_models", reps, [&] { return supported_models_serial(completion, 64).models.size(); },
                 [&] { return supported_models(completion, 64).models.size(); });

    const char* graph = quick ? "random(8,12,1)" : "random(12,20,1)";
    const char* ham_graph = quick ? "cyclechords(8,6,1)" : "cyclechords(12,14,1)";
    const std::vector<std::pair<Problem, std::int64_t>> problems = {
        {Problem::Coloring, 4}, {Problem::Hamiltonian, 0}, {Problem::IndependentSet, 3}, {Problem::VertexCover, 8}};
    for (const auto& [p, k] : problems) {
        BenchmarkSpec spec{p, make_graph(p == Problem::Hamiltonian ? ham_graph : graph), k};
        const std::string name = std::string("count ") + to_string(p) + " " + spec.graph.id;
        ok &= report(name.c_str(), reps, [&] { return count_solutions_bruteforce_serial(spec); },
                     [&] { return count_solutions_bruteforce(spec); });
    }
    BenchmarkSpec kernel{Problem::Kernel, make_graph(quick ? "drandom(8,16,1)" : "drandom(12,30,1)"), std::nullopt};
    ok &= report("count kernel drandom", reps, [&] { return count_solutions_bruteforce_serial(kernel); },
                 [&] { return count_solutions_bruteforce(kernel); });
    return ok ? 0 : 1;
}
