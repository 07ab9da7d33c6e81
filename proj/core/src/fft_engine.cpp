#include "fft_engine.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace critwave::detail {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanEntry {
  fftw_plan plan = nullptr;
  fftw_complex* in = nullptr;
  fftw_complex* out = nullptr;
  std::size_t count = 0;

  PlanEntry(const std::vector<int>& dims, int sign) {
    count = 1;
    for (int d : dims) count *= static_cast<std::size_t>(d);
    in = fftw_alloc_complex(count);
    out = fftw_alloc_complex(count);
    if (!in || !out) throw std::bad_alloc();
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), in, out,
                         sign, FFTW_ESTIMATE);
    if (!plan) throw std::runtime_error("fftw_plan_dft failed");
  }

  PlanEntry(const PlanEntry&) = delete;
  PlanEntry& operator=(const PlanEntry&) = delete;

  ~PlanEntry() {
    if (plan) {
      std::lock_guard<std::mutex> lock(planner_mutex());
      fftw_destroy_plan(plan);
    }
    fftw_free(in);
    fftw_free(out);
  }
};

struct PlanCache {
  std::map<std::pair<std::vector<int>, int>, std::unique_ptr<PlanEntry>> plans;

  PlanEntry& get(const std::vector<int>& dims, int sign) {
    auto key = std::make_pair(dims, sign);
    auto it = plans.find(key);
    if (it == plans.end())
      it = plans.emplace(std::move(key), std::make_unique<PlanEntry>(dims, sign)).first;
    return *it->second;
  }
};

}  // namespace

void dft(const std::vector<int>& dims, int sign,
         const std::complex<double>* in, std::complex<double>* out) {
  if (dims.empty() || dims.size() > 3)
    throw std::invalid_argument("dft: rank must be 1..3");
  thread_local PlanCache cache;
  PlanEntry& entry = cache.get(dims, sign);
  std::memcpy(static_cast<void*>(entry.in), static_cast<const void*>(in),
              entry.count * sizeof(fftw_complex));
  fftw_execute(entry.plan);
  std::memcpy(static_cast<void*>(out), static_cast<const void*>(entry.out),
              entry.count * sizeof(fftw_complex));
}

}  // namespace critwave::detail
