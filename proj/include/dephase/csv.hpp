// csv.hpp - deterministic CSV output with atomic replacement of the target file.
#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include <unistd.h>

#include "dephase/dynamics.hpp"
#include "dephase/error.hpp"

namespace dephase::csv {

/// Shortest representation that reads back to the same double.
inline std::string format(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw Error("csv: number formatting failed");
    return std::string(buf, end);
}

class Table {
public:
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(const std::vector<double>& row) {
        if (row.size() != header_.size()) throw Error("csv: row width does not match header");
        rows_.push_back(row);
    }

    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < header_.size(); ++i) out += (i ? "," : "") + header_[i];
        out += '\n';
        for (const auto& r : rows_) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (i) out += ',';
                out += format(r[i]);
            }
            out += '\n';
        }
        return out;
    }

    /// Writes to a temporary file next to `path` and renames it into place.
    void write_atomic(const std::string& path) const {
        namespace fs = std::filesystem;
        const fs::path target(path);
        fs::path tmp = target;
        tmp += ".tmp." + std::to_string(::getpid());
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw Error("csv: cannot open '" + tmp.string() + "' for writing");
            const std::string s = str();
            out.write(s.data(), static_cast<std::streamsize>(s.size()));
            out.flush();
            if (!out) throw Error("csv: write to '" + tmp.string() + "' failed");
        }
        std::error_code ec;
        fs::rename(tmp, target, ec);
        if (ec) {
            fs::remove(tmp);
            throw Error("csv: cannot move output into '" + path + "': " + ec.message());
        }
    }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<double>> rows_;
};

inline Table series_table(const SeriesResult& s) {
    Table t({"tau", "xi", "gamma_over_delta", "coherence_ratio", "xi_err", "gamma_err"});
    for (std::size_t i = 0; i < s.tau_grid.size(); ++i)
        t.add_row({s.tau_grid[i], s.xi[i], s.gamma[i], s.coherence_ratio[i], s.xi_err[i], s.gamma_err[i]});
    return t;
}

} // namespace dephase::csv
