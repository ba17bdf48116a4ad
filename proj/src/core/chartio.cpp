#include "core/chartio.h"

#include <algorithm>

#include <json.hpp>

namespace coops {

std::string basis_text(const Comodule& m) {
    std::string out;
    for (const auto& e : m.elems) {
        out += e.name;
        out += '\n';
    }
    return out;
}

std::string margolis_text(const std::vector<MargolisSlice>& slices) {
    std::string out;
    for (const auto& s : slices)
        out += std::to_string(s.t) + "\t" + std::to_string(s.dim) + "\n";
    return out;
}

std::string chart_tsv(const ExtChart& chart) {
    std::string out = "s\tt\tdim\tgenerators\n";
    for (const auto& c : chart.cells) {
        out += std::to_string(c.s) + "\t" + std::to_string(c.t) + "\t" + std::to_string(c.dim) + "\t";
        for (size_t g = 0; g < c.gens.size(); ++g) out += (g ? ";" : "") + c.gens[g];
        out += '\n';
    }
    return out;
}

std::string chart_json(const ExtChart& chart) {
    nlohmann::ordered_json j;
    j["prime"] = chart.p;
    j["module"] = chart.module;
    j["window"] = {{"s_max", chart.s_max}, {"t_max", chart.t_max}};
    j["cells"] = nlohmann::ordered_json::array();
    for (const auto& c : chart.cells) {
        nlohmann::ordered_json cell;
        cell["s"] = c.s;
        cell["t"] = c.t;
        cell["dim"] = c.dim;
        cell["gens"] = c.gens;
        for (size_t i = 0; i < c.v.size(); ++i) cell["v" + std::to_string(i)] = c.v[i];
        j["cells"].push_back(std::move(cell));
    }
    return j.dump(2) + "\n";
}

namespace {

// Grid geometry: one unit square per (stem, s) cell.
constexpr long long kScale = 28;
constexpr long long kMargin = 46;

long long px(long long stem, long long stem_lo) { return kMargin + (stem - stem_lo) * kScale; }
long long py(int s, int s_hi) { return kMargin + static_cast<long long>(s_hi - s) * kScale; }

}  // namespace

std::string chart_svg(const ExtChart& chart) {
    long long stem_lo = 0, stem_hi = 0;
    int s_hi = chart.s_max;
    for (const auto& c : chart.cells) {
        stem_lo = std::min(stem_lo, c.t - c.s);
        stem_hi = std::max(stem_hi, c.t - c.s);
    }
    long long w = 2 * kMargin + (stem_hi - stem_lo) * kScale;
    long long h = 2 * kMargin + static_cast<long long>(s_hi) * kScale;

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w) +
                      "\" height=\"" + std::to_string(h) + "\" viewBox=\"0 0 " + std::to_string(w) +
                      " " + std::to_string(h) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + std::to_string(kMargin) + "\" y=\"" + std::to_string(kMargin / 2) +
           "\" font-family=\"monospace\" font-size=\"13\">" + chart.module + " (p = " +
           std::to_string(chart.p) + ")</text>\n";

    // axis ticks
    for (long long stem = stem_lo; stem <= stem_hi; stem += 4)
        svg += "<text x=\"" + std::to_string(px(stem, stem_lo)) + "\" y=\"" +
               std::to_string(h - kMargin / 3) +
               "\" font-family=\"monospace\" font-size=\"10\" text-anchor=\"middle\">" +
               std::to_string(stem) + "</text>\n";
    for (int s = 0; s <= s_hi; ++s)
        svg += "<text x=\"" + std::to_string(kMargin / 3) + "\" y=\"" + std::to_string(py(s, s_hi) + 4) +
               "\" font-family=\"monospace\" font-size=\"10\" text-anchor=\"middle\">" +
               std::to_string(s) + "</text>\n";

    // v_i-multiplication lines under the dots
    const char* dash[3] = {"", " stroke-dasharray=\"5 3\"", " stroke-dasharray=\"1.5 3\""};
    for (const auto& c : chart.cells)
        for (size_t i = 0; i < c.v.size() && i < 3; ++i) {
            bool hit = false;
            for (const auto& tgt : c.v[i])
                if (tgt != "0" && tgt != "?") hit = true;
            if (!hit) continue;
            long long qi = 1;
            for (size_t k = 0; k < i; ++k) qi *= chart.p;
            qi = 2 * qi - 1;
            svg += "<line x1=\"" + std::to_string(px(c.t - c.s, stem_lo)) + "\" y1=\"" +
                   std::to_string(py(c.s, s_hi)) + "\" x2=\"" +
                   std::to_string(px(c.t - c.s + qi - 1, stem_lo)) + "\" y2=\"" +
                   std::to_string(py(c.s + 1, s_hi)) + "\" stroke=\"#777\" stroke-width=\"1\"" +
                   dash[i] + "/>\n";
        }

    for (const auto& c : chart.cells) {
        svg += "<circle cx=\"" + std::to_string(px(c.t - c.s, stem_lo)) + "\" cy=\"" +
               std::to_string(py(c.s, s_hi)) + "\" r=\"3.2\" fill=\"black\"/>\n";
        if (c.dim > 1)
            svg += "<text x=\"" + std::to_string(px(c.t - c.s, stem_lo) + 5) + "\" y=\"" +
                   std::to_string(py(c.s, s_hi) - 5) +
                   "\" font-family=\"monospace\" font-size=\"10\">" + std::to_string(c.dim) +
                   "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace coops
