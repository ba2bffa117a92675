// Times the three sweep kernels in their serial-reference and OpenMP
// configurations on fixed instances and checks that both produce identical
// results. Run with --heavy for larger instances.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gconn/characterize.hpp"
#include "gconn/spanning_pack.hpp"
#include "gconn/steiner.hpp"

using namespace gconn;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void report(const char* name, double serial_ms, double parallel_ms, bool equal) {
  std::printf("%-28s serial %9.1f ms   omp(%d) %9.1f ms   speedup %.2fx   results %s\n", name,
              serial_ms, hardware_threads(), parallel_ms,
              parallel_ms > 0 ? serial_ms / parallel_ms : 0.0, equal ? "equal" : "DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  bool heavy = argc > 1 && std::string(argv[1]) == "--heavy";
  bool all_equal = true;

  {
    // Subset sweep: kappa_k over all k-subsets.
    int n = heavy ? 11 : 10;
    int k = 5;
    Graph g = Graph::complete(n);
    g.remove_edge(0, 1);
    g.remove_edge(0, 2);
    g.remove_edge(1, 2);

    Clock::time_point t0 = Clock::now();
    GlobalResult serial = generalized_connectivity(g, k, DisjointMode::kInternal, 1);
    double serial_ms = ms_since(t0);

    t0 = Clock::now();
    GlobalResult parallel =
        generalized_connectivity(g, k, DisjointMode::kInternal, hardware_threads());
    double parallel_ms = ms_since(t0);

    bool equal = serial.value == parallel.value &&
                 serial.witness->members == parallel.witness->members;
    all_equal &= equal;
    report("subset sweep (kappa_k)", serial_ms, parallel_ms, equal);
  }

  {
    // Partition sweep over all set partitions.
    int n = heavy ? 12 : 10;
    Graph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if ((u + v) % 3 != 0) g.add_edge(u, v);

    Clock::time_point t0 = Clock::now();
    std::optional<Partition> serial = violating_partition(g, 3, 1);
    double serial_ms = ms_since(t0);

    t0 = Clock::now();
    std::optional<Partition> parallel = violating_partition(g, 3, hardware_threads());
    double parallel_ms = ms_since(t0);

    bool equal = serial.has_value() == parallel.has_value() &&
                 (!serial || (serial->blocks == parallel->blocks &&
                              serial->crossing == parallel->crossing));
    all_equal &= equal;
    report("partition sweep", serial_ms, parallel_ms, equal);
  }

  {
    // Characterization sweep over deletion-set classes.
    int n = 7;
    (void)heavy;

    Clock::time_point t0 = Clock::now();
    CharacterizationReport serial = verify_theorem(n, 4, 3, 1);
    double serial_ms = ms_since(t0);

    t0 = Clock::now();
    CharacterizationReport parallel = verify_theorem(n, 4, 3, hardware_threads());
    double parallel_ms = ms_since(t0);

    bool equal = serial.classes_checked == parallel.classes_checked &&
                 serial.counterexamples.size() == parallel.counterexamples.size();
    for (std::size_t i = 0; equal && i < serial.cases.size(); ++i)
      equal = serial.cases[i].solver_value == parallel.cases[i].solver_value &&
              serial.cases[i].m.edges == parallel.cases[i].m.edges;
    all_equal &= equal;
    report("characterization sweep", serial_ms, parallel_ms, equal);
  }

  return all_equal ? 0 : 1;
}
