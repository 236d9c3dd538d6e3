#pragma once

// Straight-line re-evaluation of the residency and time formulas in plain
// floating point. Kept free of the library's integer arithmetic and helper
// layers so the two routes can check each other.

#include <algorithm>
#include <cmath>

#include "tileperf/cost_model.hpp"
#include "tileperf/device_model.hpp"

namespace oracle {

inline double resident_blocks(const tileperf::DeviceProfile& d, int threads_per_block,
                              int regs_per_thread) {
    const double T = threads_per_block;
    const double wpb = std::ceil(T / d.warp_size);
    double r = d.max_blocks_per_sm;
    r = std::min(r, std::floor(d.max_threads_per_sm / T));
    r = std::min(r, std::floor(d.max_warps_per_sm / wpb));
    r = std::min(r, std::floor(d.regs_per_sm / (static_cast<double>(regs_per_thread) * T)));
    return r;
}

inline double predicted_time(const tileperf::DeviceProfile& d, int bw, int bh, int out_w,
                             int out_h, const tileperf::CostParams& p = {}) {
    const double T = static_cast<double>(bw) * bh;
    const double wpb = std::ceil(T / d.warp_size);
    const double seg = std::ceil(d.warp_size / std::min<double>(bw, d.warp_size));
    const double R = resident_blocks(d, bw * bh, p.regs_per_thread);
    const double B = std::ceil(static_cast<double>(out_w) / bw) *
                     std::ceil(static_cast<double>(out_h) / bh);
    const double rounds = std::ceil(B / (d.num_sm * R));
    const double compute =
        std::ceil(R * wpb * d.warp_size / d.cores_per_sm) * p.c_issue + R * p.c_block;
    const double h = std::min(1.0, R * wpb / p.w_hide);
    const double memory = R * (wpb * seg * p.c_trans + T * p.c_access) / h;
    return rounds * (compute + memory);
}

}  // namespace oracle
