#pragma once

#include "eggbeater/linalg.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace eggbeater::cli {

struct Cell {
    enum class Kind { Text, Number, Integer, Bool } kind = Kind::Text;
    std::string text;
};

Cell text(const std::string& s);
Cell number(double x);  // %.17g
Cell integer(std::int64_t x);
Cell boolean(bool b);
Cell vector_cell(const Vec& v);                   // components separated by spaces
Cell states_cell(const std::vector<Vec>& states); // vectors separated by ';'

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

struct Metadata {
    std::string subcommand;
    std::string config_hash;
    std::uint64_t seed = 0;
    bool timestamps = false;
};

std::string format_double(double x);
std::string to_csv(const Table& t);
std::string to_json(const Table& t, const Metadata& meta);

// Writes through a temporary file in the same directory and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

struct Series {
    std::string label;
    std::vector<double> xs, ys;
    bool markers = false;
};

std::string svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                     const std::vector<Series>& series);

}  // namespace eggbeater::cli
