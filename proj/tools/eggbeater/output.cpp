#include "output.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

#ifndef EGGBEATER_VERSION
#define EGGBEATER_VERSION "0.1.0"
#endif

namespace eggbeater::cli {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Cell text(const std::string& s) { return {Cell::Kind::Text, s}; }
Cell number(double x) { return {Cell::Kind::Number, format_double(x)}; }
Cell integer(std::int64_t x) { return {Cell::Kind::Integer, std::to_string(x)}; }
Cell boolean(bool b) { return {Cell::Kind::Bool, b ? "true" : "false"}; }

Cell vector_cell(const Vec& v) {
    std::string out;
    for (Eigen::Index i = 0; i < v.size(); ++i) out += (i ? " " : "") + format_double(v[i]);
    return text(out);
}

Cell states_cell(const std::vector<Vec>& states) {
    std::string out;
    for (std::size_t j = 0; j < states.size(); ++j) out += (j ? ";" : "") + vector_cell(states[j]).text;
    return text(out);
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

nlohmann::ordered_json json_cell(const Cell& c) {
    switch (c.kind) {
    case Cell::Kind::Number: {
        double x = std::stod(c.text);
        if (!std::isfinite(x)) return c.text;
        return x;
    }
    case Cell::Kind::Integer: return std::stoll(c.text);
    case Cell::Kind::Bool: return c.text == "true";
    case Cell::Kind::Text: break;
    }
    return c.text;
}

}  // namespace

std::string to_csv(const Table& t) {
    std::ostringstream os;
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_field(t.columns[i]);
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i].text);
        os << '\n';
    }
    return os.str();
}

std::string to_json(const Table& t, const Metadata& meta) {
    nlohmann::ordered_json doc;
    doc["metadata"]["table"] = t.name;
    doc["metadata"]["subcommand"] = meta.subcommand;
    doc["metadata"]["version"] = EGGBEATER_VERSION;
    doc["metadata"]["config_hash"] = meta.config_hash;
    doc["metadata"]["seed"] = meta.seed;
    if (meta.timestamps) {
        std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        doc["metadata"]["timestamp"] = buf;
    }
    doc["columns"] = t.columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i) obj[t.columns[i]] = json_cell(row[i]);
        doc["rows"].push_back(obj);
    }
    return doc.dump(2) + "\n";
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                     const std::vector<Series>& series) {
    const double W = 640, H = 420, left = 80, right = 20, top = 40, bottom = 60;
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            xmin = std::min(xmin, s.xs[i]);
            xmax = std::max(xmax, s.xs[i]);
            ymin = std::min(ymin, s.ys[i]);
            ymax = std::max(ymax, s.ys[i]);
        }
    if (!(xmax > xmin)) xmax = xmin + 1;
    if (!(ymax > ymin)) ymax = ymin + 1;
    auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (W - left - right); };
    auto py = [&](double y) { return H - bottom - (y - ymin) / (ymax - ymin) * (H - top - bottom); };
    const char* colors[] = {"#1f5fa8", "#c0392b", "#27864a", "#8e44ad", "#d68910"};
    char buf[256];
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n";
    std::snprintf(buf, sizeof buf, "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" stroke=\"black\"/>\n",
                  left, top, W - left - right, H - top - bottom);
    os << buf;
    for (int i = 0; i <= 4; ++i) {
        double xv = xmin + (xmax - xmin) * i / 4, yv = ymin + (ymax - ymin) * i / 4;
        std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\" font-size=\"11\">%.4g</text>\n",
                      px(xv), H - bottom + 16, xv);
        os << buf;
        std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\" font-size=\"11\">%.4g</text>\n",
                      left - 6, py(yv) + 4, yv);
        os << buf;
    }
    os << "<text x=\"" << (left + W - right) / 2 << "\" y=\"" << H - 18 << "\" text-anchor=\"middle\" font-size=\"13\">"
       << xlabel << "</text>\n";
    os << "<text x=\"18\" y=\"" << (top + H - bottom) / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
       << (top + H - bottom) / 2 << ")\">" << ylabel << "</text>\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = colors[k % 5];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", i ? " " : "", px(s.xs[i]), py(s.ys[i]));
            os << buf;
        }
        os << "\"/>\n";
        if (s.markers)
            for (std::size_t i = 0; i < s.xs.size(); ++i) {
                std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"%s\"/>\n", px(s.xs[i]),
                              py(s.ys[i]), color);
                os << buf;
            }
        std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" font-size=\"12\" fill=\"%s\">%s</text>\n", left + 10,
                      top + 16 + 15 * static_cast<double>(k), color, s.label.c_str());
        os << buf;
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace eggbeater::cli
