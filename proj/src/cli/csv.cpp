#include "vml/cli/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "vml/error.hpp"

namespace vml {

namespace {

std::vector<double> values(const FunctionalReport& r) {
    std::vector<double> v{r.t, static_cast<double>(r.step), r.f_l2sq, r.field_energy, r.E_N};
    v.insert(v.end(), r.E_k.begin(), r.E_k.end());
    v.insert(v.end(), r.D_k.begin(), r.D_k.end());
    v.insert(v.end(), r.E_kw.begin(), r.E_kw.end());
    for (double x : {r.E_Nl, r.D_Nl, r.Ebar_top, r.X, r.hs_f, r.hs_E, r.hs_B, r.zero_mode, r.gauss, r.div_B})
        v.push_back(x);
    v.insert(v.end(), r.cap.begin(), r.cap.end());
    v.insert(v.end(), r.interp.begin(), r.interp.end());
    v.push_back(r.lyapunov_delta);
    v.push_back(static_cast<double>(r.lyapunov_flags));
    v.push_back(r.max_imag);
    return v;
}

}  // namespace

const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> cols = [] {
        std::vector<std::string> c{"t", "step", "f_l2sq", "field_energy", "E_N"};
        for (const char* base : {"E_k", "D_k", "E_kw"})
            for (int k = 0; k < 3; ++k) c.push_back(std::string(base) + "_" + std::to_string(k));
        for (const char* n : {"E_Nl", "D_Nl", "Ebar_top", "X", "hs_f", "hs_E", "hs_B", "zero_mode", "gauss", "div_B"})
            c.push_back(n);
        for (const char* base : {"cap", "interp"})
            for (int k = 0; k < 3; ++k) c.push_back(std::string(base) + "_" + std::to_string(k));
        c.push_back("lyapunov_delta");
        c.push_back("lyapunov_flags");
        c.push_back("max_imag");
        return c;
    }();
    return cols;
}

std::string csv_header() {
    std::string h;
    for (const auto& c : csv_columns()) h += (h.empty() ? "" : ",") + c;
    return h;
}

std::string csv_row(const FunctionalReport& r) {
    std::string line;
    char buf[40];
    for (double x : values(r)) {
        std::snprintf(buf, sizeof buf, "%.17g", x);
        if (!line.empty()) line += ',';
        line += buf;
    }
    return line;
}

void write_csv(std::ostream& out, const std::vector<FunctionalReport>& rows) {
    out << kCsvSchema << '\n' << csv_header() << '\n';
    for (const auto& r : rows) out << csv_row(r) << '\n';
}

std::vector<double> CsvTable::column(const std::string& name) const {
    for (std::size_t c = 0; c < columns.size(); ++c)
        if (columns[c] == name) {
            std::vector<double> out;
            for (const auto& r : rows) out.push_back(r[c]);
            return out;
        }
    throw ConfigError("no column '" + name + "' in table");
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    CsvTable t;
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (t.columns.empty()) {
            t.columns = cells;
            continue;
        }
        if (cells.size() != t.columns.size())
            throw IoError(path + ": line " + std::to_string(no) + " has " + std::to_string(cells.size()) +
                          " cells, header has " + std::to_string(t.columns.size()));
        std::vector<double> row;
        for (const auto& c : cells) {
            char* end = nullptr;
            const double d = std::strtod(c.c_str(), &end);
            if (c.empty() || *end != '\0')
                throw IoError(path + ": line " + std::to_string(no) + ": '" + c + "' is not a number");
            row.push_back(d);
        }
        t.rows.push_back(std::move(row));
    }
    if (t.columns.empty()) throw IoError(path + ": no header row");
    return t;
}

}  // namespace vml
