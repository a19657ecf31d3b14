// Benchmarks the OpenMP kernels against their serial references on the
// catalogued models: the WDVV index scan and the bridge-entry verification.
#include "frob/checks.hpp"
#include "frob/parallel.hpp"

#include <chrono>
#include <iostream>

using namespace frob;
using Clock = std::chrono::steady_clock;

namespace {

double time_of(const std::function<void()>& fn) {
    auto t0 = Clock::now();
    fn();
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    configure_threads_from_env();
    std::string dir = manifest_dir_default();
    std::vector<std::string> names = {"h3prime", "h3doubleprime", "d4a1"};
    if (argc > 1) names.assign(argv + 1, argv + argc);
    std::cout << "workers: " << worker_count() << "\n";
    for (const auto& name : names) {
        Manifest mf = Manifest::load_file(dir + "/" + name + ".json");
        FrobeniusModel model(mf.to_data());
        double serial = time_of([&] {
            auto r = model.wdvv_scan_serial();
            if (!r.pass) std::cerr << name << ": wdvv failed\n";
        });
        double parallel = time_of([&] {
            auto r = model.wdvv_scan(true);
            if (!r.pass) std::cerr << name << ": wdvv failed\n";
        });
        std::printf("%-16s wdvv scan    serial %8.3fs   omp %8.3fs   speedup %.2fx\n",
                    name.c_str(), serial, parallel, serial / std::max(parallel, 1e-9));
        CoordinateBridge bridge = mf.to_bridge(model);
        const CoxeterModel& cox = CoxeterModel::get(mf.group);
        double bser = time_of([&] {
            // serial reference: same entries through serial_for
            const std::size_t n = model.n();
            serial_for(n * n, [&](std::size_t idx) {
                std::size_t i = idx / n, l = idx % n;
                auto d = model.qring()->from_poly(bridge.forward[i]).total_derivative(l);
                (void)d;
            });
        });
        double bpar = time_of([&] { verify_bridge(model, cox, bridge); });
        std::printf("%-16s bridge       serial %8.3fs   omp %8.3fs\n", name.c_str(), bser,
                    bpar);
    }
    return 0;
}
