#include "subpix/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace subpix::fft {

namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

// Plans are created once per size with FFTW_UNALIGNED so they can be executed
// on any caller buffer via the new-array interface. The FFTW planner itself
// is not thread-safe, so creation takes the unique lock; fftw_execute_dft on
// distinct arrays is safe to run concurrently.
class PlanCache {
public:
    PlanPair get(int w, int h) {
        const auto key = std::make_pair(w, h);
        {
            std::shared_lock lock(mutex_);
            auto it = plans_.find(key);
            if (it != plans_.end()) return it->second;
        }
        std::unique_lock lock(mutex_);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;

        std::vector<std::complex<double>> scratch(static_cast<std::size_t>(w) * h);
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        PlanPair pair;
        // FFTW's first dimension is the slowest-varying one, i.e. y.
        pair.fwd = fftw_plan_dft_2d(h, w, buf, buf, FFTW_FORWARD,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
        pair.bwd = fftw_plan_dft_2d(h, w, buf, buf, FFTW_BACKWARD,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!pair.fwd || !pair.bwd) {
            throw std::runtime_error("fft: FFTW plan creation failed");
        }
        plans_.emplace(key, pair);
        return pair;
    }

    ~PlanCache() {
        for (auto& [key, pair] : plans_) {
            fftw_destroy_plan(pair.fwd);
            fftw_destroy_plan(pair.bwd);
        }
    }

private:
    std::shared_mutex mutex_;
    std::map<std::pair<int, int>, PlanPair> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

}  // namespace

void forward(int width, int height, std::complex<double>* data) {
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(cache().get(width, height).fwd, buf, buf);
}

void inverse(int width, int height, std::complex<double>* data) {
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(cache().get(width, height).bwd, buf, buf);
}

}  // namespace subpix::fft
