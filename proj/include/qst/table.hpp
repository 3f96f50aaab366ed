#pragma once

#include <string>
#include <vector>

namespace qst {

// Column-oriented numeric table. Comment lines are written verbatim after a
// '#' prefix and carry the resolved configuration for reproducibility.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> comments;

    void add_row(std::vector<double> row);
};

// 12 significant digits, deterministic formatting.
std::string format_value(double v);

void write_csv(const Table& table, const std::string& path);

struct PlotSeries {
    std::string column;  // y column; x is the first table column
    std::string style;   // free-form hint: lines, points, ...
};

struct PlotSpec {
    std::string title;
    std::string xlabel, ylabel;
    bool logx = false, logy = false;
    std::string kind = "lines";  // lines | heatmap
    std::vector<PlotSeries> series;
};

// Writes one whitespace-delimited data file per series named
// <basename>.<column>.dat plus a declarative <basename>.plot description.
// Throws on an empty table before creating any file.
void emit_plot_data(const Table& table, const PlotSpec& spec, const std::string& out_dir,
                    const std::string& basename);

// Matrix layout for two-parameter maps: first line holds the column
// coordinates, each following line is "row_coordinate v v v ...".
void write_matrix_data(const std::vector<double>& row_coords,
                       const std::vector<double>& col_coords, const std::vector<double>& values,
                       const std::string& path);

}  // namespace qst
