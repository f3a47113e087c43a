#ifndef ADAPROX_TRACE_IO_HPP
#define ADAPROX_TRACE_IO_HPP

#include <array>
#include <ostream>
#include <string>
#include <vector>

#include "adaprox/experiment.hpp"
#include "adaprox/solvers.hpp"

namespace adaprox {

// shortest 17-significant-digit form; the trace format is bit-exact
std::string format_g17(double v);

// Per-iteration trace CSV with the fixed header
//   iter,eta,delta,sum_delta_sq,gap_avg,gap_last,wardrop,grad_norm_sq,diverged
// Merit cells are empty except at sampled iterations of enabled columns; the
// diverged flag is raised on the truncation row.
void write_trace_csv(std::ostream& os, const Trace& trace,
                     const std::vector<MeritSample>& merits,
                     const std::array<bool, 4>& enabled_columns);

void write_trace_csv_file(const std::string& path, const Trace& trace,
                          const std::vector<MeritSample>& merits,
                          const std::array<bool, 4>& enabled_columns);

// Iteration versus cross-seed mean and 95% CI half-width per enabled merit.
void write_plot_csv(std::ostream& os, const std::vector<SeedRun>& seeds,
                    const std::array<bool, 4>& enabled_columns);

}  // namespace adaprox

#endif
