// Compares the serial and OpenMP verification kernels on the same germ
// pool: results must be bitwise identical, timings show the speedup.
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "liecurv/germgen.hpp"
#include "liecurv/parallel.hpp"
#include "liecurv/submanifold.hpp"

using namespace liecurv;

namespace {

struct Row {
    double square_law;
    double tangent_invariance;
    double sign_residual;
    double spectrum_radius;  // -1 when the germ is outside the Riemannian case

    bool operator==(const Row& o) const {
        return square_law == o.square_law && tangent_invariance == o.tangent_invariance &&
               sign_residual == o.sign_residual && spectrum_radius == o.spectrum_radius;
    }
};

Row verify_one(const Germ& g, const Tolerances& tols) {
    Row row{};
    Prop9Result p9 = verify_prop9(g, tols);
    row.square_law = p9.k_minus_alpha_sq;
    row.tangent_invariance = p9.tangent_invariance_residual;
    try {
        row.sign_residual = check_sign_convention(g, tols).max_residual;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NotDiagonalizable && e.code() != ErrorCode::DegenerateSubspace)
            throw;
        row.sign_residual = -1.0;  // indefinite metric, defective K: no eigenpairs to test
    }
    row.spectrum_radius = -1.0;
    bool riemannian = true;
    for (int i = 0; i < g.dim(); ++i)
        if (g.tangent_form.gram()(i, i) < 0.0) riemannian = false;
    if (riemannian && p9.closed_normal) {
        Corollary11Result c = check_corollary11(g, tols);
        row.spectrum_radius = 0.0;
        for (const auto& [value, count] : c.profile)
            row.spectrum_radius = std::max(row.spectrum_radius, std::abs(value));
    }
    return row;
}

double runtime_seconds(const std::vector<Germ>& pool, const Tolerances& tols, bool parallel,
                       std::vector<Row>& out) {
    auto fn = [&](std::size_t i) { return verify_one(pool[i], tols); };
    auto t0 = std::chrono::steady_clock::now();
    out = parallel ? parallel_map<Row>(pool.size(), fn) : serial_map<Row>(pool.size(), fn);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    int per_algebra = argc > 1 ? std::atoi(argv[1]) : 250;
    int reps = argc > 2 ? std::atoi(argv[2]) : 3;
    if (per_algebra < 1 || reps < 1) {
        std::cerr << "usage: bench [germs-per-algebra] [repetitions]\n";
        return 1;
    }

    Tolerances tols = default_tolerances();
    std::vector<Germ> pool;
    std::uint64_t seed = 424242;
    for (const std::string& id : closed_germ_algebras()) {
        std::vector<Germ> part = random_closed_germs(id, per_algebra, seed, tols);
        for (Germ& g : part) pool.push_back(std::move(g));
        seed += 1000;
    }
    std::cout << "pool: " << pool.size() << " closed germs\n";
#ifdef _OPENMP
    std::cout << "threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "threads: 1 (compiled without OpenMP; parallel kernel degrades to serial)\n";
#endif

    std::vector<Row> serial_rows, parallel_rows;
    double best_serial = 1e300, best_parallel = 1e300;
    for (int r = 0; r < reps; ++r) {
        best_serial = std::min(best_serial, runtime_seconds(pool, tols, false, serial_rows));
        best_parallel = std::min(best_parallel, runtime_seconds(pool, tols, true, parallel_rows));
    }

    bool identical = serial_rows.size() == parallel_rows.size();
    for (std::size_t i = 0; identical && i < serial_rows.size(); ++i)
        identical = serial_rows[i] == parallel_rows[i];

    std::cout << "serial:   " << best_serial * 1e3 << " ms (best of " << reps << ")\n";
    std::cout << "parallel: " << best_parallel * 1e3 << " ms (best of " << reps << ")\n";
    std::cout << "speedup:  " << best_serial / best_parallel << "x\n";
    std::cout << "results identical: " << (identical ? "yes" : "NO") << "\n";
    return identical ? 0 : 1;
}
