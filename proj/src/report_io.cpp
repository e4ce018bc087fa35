#include "curvelab/report_io.hpp"

#include <cstdio>
#include <stdexcept>

namespace curvelab {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

nlohmann::json growth_report_json(const GrowthReport& rep) {
    nlohmann::json j;
    j["r"] = rep.r;
    j["q"] = rep.q;
    j["dlogq"] = rep.dlogq;
    j["d2logq"] = rep.d2logq;
    j["residual_i"] = rep.residual_i;
    j["residual_ii"] = rep.residual_ii;
    j["residual_ii_tilde"] = rep.residual_ii_tilde;
    if (!rep.doubling.empty()) j["doubling"] = rep.doubling;
    j["worst_margin"] = rep.worst_margin;
    j["tol"] = rep.tol;
    j["pass"] = rep.pass;
    j["seed"] = rep.seed;
    j["params"] = rep.params;
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    if (!content.empty() && std::fwrite(content.data(), 1, content.size(), f) != content.size()) {
        std::fclose(f);
        throw std::runtime_error("short write: " + path);
    }
    std::fclose(f);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    write_text_file(path, out);
}

} // namespace curvelab
