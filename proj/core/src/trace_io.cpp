#include "adaprox/trace_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

#include "adaprox/errors.hpp"

namespace adaprox {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_trace_csv(std::ostream& os, const Trace& trace,
                     const std::vector<MeritSample>& merits,
                     const std::array<bool, 4>& enabled_columns) {
  os << "iter,eta,delta,sum_delta_sq,gap_avg,gap_last,wardrop,grad_norm_sq,diverged\n";
  std::size_t merit_idx = 0;
  for (std::size_t n = 1; n <= trace.completed; ++n) {
    os << n << ',' << format_g17(trace.eta[n - 1]) << ',' << format_g17(trace.delta[n - 1])
       << ',' << format_g17(trace.sum_delta_sq[n - 1]);

    while (merit_idx < merits.size() && merits[merit_idx].n < n) ++merit_idx;
    const MeritSample* row =
        (merit_idx < merits.size() && merits[merit_idx].n == n) ? &merits[merit_idx] : nullptr;
    for (int col = 0; col < 4; ++col) {
      os << ',';
      if (row && enabled_columns[col] && std::isfinite(row->value[col]))
        os << format_g17(row->value[col]);
    }
    const bool flagged = trace.diverged && n == trace.completed;
    os << ',' << (flagged ? 1 : 0) << '\n';
  }
}

void write_trace_csv_file(const std::string& path, const Trace& trace,
                          const std::vector<MeritSample>& merits,
                          const std::array<bool, 4>& enabled_columns) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write trace file " + path);
  write_trace_csv(out, trace, merits, enabled_columns);
}

void write_plot_csv(std::ostream& os, const std::vector<SeedRun>& seeds,
                    const std::array<bool, 4>& enabled_columns) {
  os << "iter";
  for (int col = 0; col < 4; ++col)
    if (enabled_columns[col])
      os << ',' << kMeritColumns[col] << "_mean," << kMeritColumns[col] << "_ci";
  os << '\n';

  // per-iteration cross-seed samples
  std::map<std::size_t, std::array<std::vector<double>, 4>> by_iter;
  for (const SeedRun& s : seeds)
    for (const MeritSample& row : s.merits)
      for (int col = 0; col < 4; ++col)
        if (enabled_columns[col] && std::isfinite(row.value[col]))
          by_iter[row.n][col].push_back(row.value[col]);

  for (const auto& [n, cols] : by_iter) {
    os << n;
    for (int col = 0; col < 4; ++col) {
      if (!enabled_columns[col]) continue;
      const std::vector<double>& vals = cols[col];
      if (vals.empty()) {
        os << ",,";
        continue;
      }
      double mean = 0.0;
      for (double v : vals) mean += v;
      mean /= double(vals.size());
      double ci = 0.0;
      if (vals.size() > 1) {
        double ss = 0.0;
        for (double v : vals) ss += (v - mean) * (v - mean);
        double sd = std::sqrt(ss / double(vals.size() - 1));
        ci = t_quantile_975(vals.size() - 1) * sd / std::sqrt(double(vals.size()));
      }
      os << ',' << format_g17(mean) << ',' << format_g17(ci);
    }
    os << '\n';
  }
}

}  // namespace adaprox
