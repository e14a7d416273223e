// Serial reference vs OpenMP kernels on the same scans.
// usage: thinset_bench [depth]

#include "thinset/kernels.hpp"
#include "thinset/witness.hpp"

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iostream>

using namespace thinset;

template <class F>
double seconds(F&& f) {
    auto beg = std::chrono::steady_clock::now();
    f();
    std::chrono::duration<double> d = std::chrono::steady_clock::now() - beg;
    return d.count();
}

int main(int argc, char** argv) {
    std::uint64_t depth = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 200000;
    std::cout << "threads: " << omp_get_max_threads() << ", depth: " << depth << "\n";

    IntegerSequence a = IntegerSequence::scaled_geometric(Integer(3), 2);
    CircleRational x = CircleRational::parse("1/1000003");
    std::vector<Rational> eps = {Rational(1, 4), Rational(1, 8), Rational(1, 16), Rational(1, 64)};

    std::vector<std::uint32_t> ms, mp;
    double ts = seconds([&] { ms = kernels::exceptional_masks(a, x, eps, depth, kernels::Exec::serial); });
    double tp = seconds([&] { mp = kernels::exceptional_masks(a, x, eps, depth, kernels::Exec::parallel); });
    std::cout << "exceptional_masks   serial " << ts << " s, parallel " << tp << " s, speedup " << ts / tp
              << (ms == mp ? ", identical" : ", MISMATCH") << "\n";

    std::uint64_t nsum = std::min<std::uint64_t>(depth, 20000);
    std::vector<std::uint64_t> cps = {nsum / 4, nsum / 2, nsum};
    std::vector<Rational> ss, sp;
    ts = seconds([&] { ss = kernels::weighted_norm_sums(a, x, WeightRule::harmonic(), cps, kernels::Exec::serial); });
    tp = seconds([&] { sp = kernels::weighted_norm_sums(a, x, WeightRule::harmonic(), cps, kernels::Exec::parallel); });
    std::cout << "weighted_norm_sums  serial " << ts << " s, parallel " << tp << " s, speedup " << ts / tp
              << (ss == sp ? ", identical" : ", MISMATCH") << "\n";

    WitnessPlan plan = plan_witness(Theorem::th2, ArithmeticSequence::geometric(3),
                                    IntegerSequence::scaled_geometric(Integer(2), 3), IdealDescriptor::density(), 10);
    WitnessCertificate cs, cp;
    ts = seconds([&] { cs = build_and_verify(plan, {kernels::Exec::serial}); });
    tp = seconds([&] { cp = build_and_verify(plan, {kernels::Exec::parallel}); });
    std::cout << "build_and_verify    serial " << ts << " s, parallel " << tp << " s, speedup " << ts / tp
              << (cs.pass == cp.pass ? ", same verdict" : ", MISMATCH") << "\n";
    return ms == mp && ss == sp && cs.pass == cp.pass ? EXIT_SUCCESS : EXIT_FAILURE;
}
