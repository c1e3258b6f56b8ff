#include <benchmark/benchmark.h>

// Own main: the distro's prebuilt benchmark_main archive carries LTO bytecode tied to
// another compiler release.
BENCHMARK_MAIN();
