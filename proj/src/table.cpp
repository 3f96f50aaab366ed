#include "qst/table.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace qst {

void Table::add_row(std::vector<double> row) {
    if (row.size() != columns.size())
        throw std::invalid_argument("table row width does not match column count");
    rows.push_back(std::move(row));
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write output file '" + path + "'");
    return out;
}

int column_index(const Table& table, const std::string& name) {
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        if (table.columns[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("table has no column '" + name + "'");
}

}  // namespace

void write_csv(const Table& table, const std::string& path) {
    if (table.columns.empty()) throw std::invalid_argument("refusing to write empty table");
    auto out = open_out(path);
    for (const auto& c : table.comments) out << "# " << c << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << table.columns[i] << (i + 1 < table.columns.size() ? "," : "");
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << format_value(row[i]) << (i + 1 < row.size() ? "," : "");
        out << "\n";
    }
}

void emit_plot_data(const Table& table, const PlotSpec& spec, const std::string& out_dir,
                    const std::string& basename) {
    if (table.rows.empty() || table.columns.empty())
        throw std::runtime_error("emit_plot_data: table is empty, no files written");
    namespace fs = std::filesystem;
    const fs::path dir(out_dir);

    std::vector<std::pair<std::string, std::string>> series_files;
    for (const auto& s : spec.series) {
        const int yi = column_index(table, s.column);
        const std::string fname = basename + "." + s.column + ".dat";
        auto out = open_out((dir / fname).string());
        for (const auto& row : table.rows)
            out << format_value(row[0]) << " " << format_value(row[yi]) << "\n";
        series_files.emplace_back(s.column, fname);
    }

    auto plot = open_out((dir / (basename + ".plot")).string());
    plot << "title = " << spec.title << "\n";
    plot << "kind = " << spec.kind << "\n";
    plot << "xlabel = " << spec.xlabel << "\n";
    plot << "ylabel = " << spec.ylabel << "\n";
    plot << "xscale = " << (spec.logx ? "log" : "linear") << "\n";
    plot << "yscale = " << (spec.logy ? "log" : "linear") << "\n";
    for (std::size_t i = 0; i < series_files.size(); ++i) {
        plot << "series " << series_files[i].first << " = " << series_files[i].second;
        if (!spec.series[i].style.empty()) plot << " (" << spec.series[i].style << ")";
        plot << "\n";
    }
}

void write_matrix_data(const std::vector<double>& row_coords,
                       const std::vector<double>& col_coords, const std::vector<double>& values,
                       const std::string& path) {
    if (row_coords.empty() || col_coords.empty() ||
        values.size() != row_coords.size() * col_coords.size())
        throw std::invalid_argument("matrix data dimensions are inconsistent");
    auto out = open_out(path);
    out << format_value(static_cast<double>(col_coords.size()));
    for (double c : col_coords) out << " " << format_value(c);
    out << "\n";
    for (std::size_t r = 0; r < row_coords.size(); ++r) {
        out << format_value(row_coords[r]);
        for (std::size_t c = 0; c < col_coords.size(); ++c)
            out << " " << format_value(values[r * col_coords.size() + c]);
        out << "\n";
    }
}

}  // namespace qst
