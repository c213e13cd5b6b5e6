#include "gatesim/csv.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gatesim {

std::vector<MeanTraceSample> average_traces(const std::vector<std::vector<TraceSample>>& traces) {
    std::vector<MeanTraceSample> out;
    if (traces.empty()) return out;
    std::size_t points = traces.front().size();
    for (const auto& t : traces) points = std::min(points, t.size());
    out.resize(points);
    const double scale = 1.0 / static_cast<double>(traces.size());
    for (std::size_t k = 0; k < points; ++k) {
        out[k].time = traces.front()[k].time;
        for (const auto& t : traces) {
            out[k].waiting_total += static_cast<double>(t[k].waiting_total);
            out[k].waiting_regular += static_cast<double>(t[k].waiting_regular);
            out[k].waiting_precheck += static_cast<double>(t[k].waiting_precheck);
        }
        out[k].waiting_total *= scale;
        out[k].waiting_regular *= scale;
        out[k].waiting_precheck *= scale;
    }
    return out;
}

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

namespace {

const char* lane_name(LaneClass lane) {
    return lane == LaneClass::regular ? "regular" : "precheck";
}

}  // namespace

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "gates,mean_wait_s,wait_stderr_s,wait_variance_s2,pro_a,pro_v,"
           "rho_regular,rho_precheck,tail_fraction_2h,replications,feasible\n";
    for (const auto& r : rows) {
        out << r.gates << ',' << format_double(r.mean_wait) << ','
            << format_double(r.wait_stderr) << ',' << format_double(r.wait_variance)
            << ',' << format_double(r.pro_a) << ',' << format_double(r.pro_v) << ','
            << format_double(r.rho_regular) << ',' << format_double(r.rho_precheck)
            << ',' << format_double(r.tail_fraction_2h) << ',' << r.replications
            << ',' << (r.feasible ? 1 : 0) << '\n';
    }
    return out.str();
}

std::string trace_csv(const std::vector<TraceSample>& trace) {
    std::ostringstream out;
    out << "time_s,total_waiting,waiting_regular,waiting_precheck\n";
    for (const auto& s : trace)
        out << format_double(s.time) << ',' << s.waiting_total << ','
            << s.waiting_regular << ',' << s.waiting_precheck << '\n';
    return out.str();
}

std::string trace_csv(const std::vector<MeanTraceSample>& trace) {
    std::ostringstream out;
    out << "time_s,total_waiting,waiting_regular,waiting_precheck\n";
    for (const auto& s : trace)
        out << format_double(s.time) << ',' << format_double(s.waiting_total) << ','
            << format_double(s.waiting_regular) << ','
            << format_double(s.waiting_precheck) << '\n';
    return out.str();
}

std::string passengers_csv(const std::vector<PassengerRecord>& records) {
    std::ostringstream out;
    out << "id,arrival_s,lane,queue_index,service_start_s,service_s,wait_s,departure_s\n";
    for (const auto& r : records) {
        if (!r.served) continue;
        out << r.id << ',' << format_double(r.arrival_time) << ',' << lane_name(r.lane)
            << ',' << r.queue_index << ',' << format_double(r.service_start) << ','
            << format_double(r.service_duration) << ',' << format_double(r.wait())
            << ',' << format_double(r.departure) << '\n';
    }
    return out.str();
}

std::string recommendation_csv(const Recommendation& rec) {
    std::ostringstream out;
    out << "recommended_gates,criterion,wait_cap_s,mean_wait_s,pro_v\n";
    out << rec.gates << ',' << criterion_name(rec.criterion) << ','
        << format_double(rec.wait_cap) << ',' << format_double(rec.mean_wait) << ','
        << format_double(rec.pro_v) << '\n';
    return out.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write '" + tmp + "'");
        out << content;
        if (!out)
            throw std::runtime_error("write failed for '" + tmp + "'");
    }
    std::filesystem::rename(tmp, path);
}

void emit_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    write_file_atomic(path, sweep_csv(rows));
}
void emit_csv(const std::vector<TraceSample>& trace, const std::string& path) {
    write_file_atomic(path, trace_csv(trace));
}
void emit_csv(const std::vector<MeanTraceSample>& trace, const std::string& path) {
    write_file_atomic(path, trace_csv(trace));
}
void emit_csv(const std::vector<PassengerRecord>& records, const std::string& path) {
    write_file_atomic(path, passengers_csv(records));
}
void emit_csv(const Recommendation& rec, const std::string& path) {
    write_file_atomic(path, recommendation_csv(rec));
}

}  // namespace gatesim
