#pragma once

#include <string>
#include <vector>

#include "gatesim/engine.hpp"
#include "gatesim/optimizer.hpp"

namespace gatesim {

/// Replication-averaged waiting-count trace (same grid as TraceSample).
struct MeanTraceSample {
    double time = 0.0;
    double waiting_total = 0.0;
    double waiting_regular = 0.0;
    double waiting_precheck = 0.0;
};

/// Pointwise mean of equally-gridded traces, combined in replication order.
std::vector<MeanTraceSample> average_traces(const std::vector<std::vector<TraceSample>>& traces);

/// Shortest decimal form that round-trips the exact double.
std::string format_double(double value);

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string trace_csv(const std::vector<TraceSample>& trace);
std::string trace_csv(const std::vector<MeanTraceSample>& trace);
std::string passengers_csv(const std::vector<PassengerRecord>& records);
std::string recommendation_csv(const Recommendation& rec);

/// Write-then-rename so partial files never appear.
void write_file_atomic(const std::string& path, const std::string& content);

void emit_csv(const std::vector<SweepRow>& rows, const std::string& path);
void emit_csv(const std::vector<TraceSample>& trace, const std::string& path);
void emit_csv(const std::vector<MeanTraceSample>& trace, const std::string& path);
void emit_csv(const std::vector<PassengerRecord>& records, const std::string& path);
void emit_csv(const Recommendation& rec, const std::string& path);

}  // namespace gatesim
