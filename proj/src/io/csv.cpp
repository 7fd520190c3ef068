#include "wtfb/io.hpp"

#include <cstdio>
#include <fstream>

#include "wtfb/errors.hpp"

namespace wtfb::io {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

std::string fmt17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string render_csv(const CsvTable& table) {
    std::string out;
    for (const auto& c : table.header_comments) {
        out += "# ";
        out += c;
        out += '\n';
    }
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += table.columns[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw validation_error("csv row width does not match the header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw validation_error(path + ": cannot open file for writing");
    out << contents;
    if (!out) throw validation_error(path + ": write failed");
}

CsvTable sweep_to_csv(double p1, const std::vector<SweepRow>& rows, const RunManifest& manifest) {
    CsvTable t;
    t.header_comments = manifest.comment_lines();
    t.header_comments.push_back("p1 = " + fmt(p1));
    t.header_comments.push_back(
        "gamma order: gamma1=(x=0,y1=0) gamma2=(x=0,y1=1) gamma3=(x=1,y1=0) gamma4=(x=1,y1=1), "
        "each P(v=0|x,y1); alpha_star = P(x=0) at the cb_in_new argmax");
    t.columns = {"p2",     "cb_s",   "cb_in",  "cb_in_new", "cb_out",
                 "alpha_star", "gamma1", "gamma2", "gamma3",    "gamma4"};
    for (const auto& r : rows) {
        t.rows.push_back({fmt(r.p2), fmt(r.cb_s), fmt(r.cb_in), fmt(r.cb_in_new), fmt(r.cb_out),
                          fmt(r.alpha_star), fmt(r.gamma_star[0]), fmt(r.gamma_star[1]),
                          fmt(r.gamma_star[2]), fmt(r.gamma_star[3])});
    }
    return t;
}

} // namespace wtfb::io
