#pragma once

#include <string>
#include <vector>

#include "core/comodule.h"
#include "core/koszul.h"

namespace coops {

// One basis element name per line, in basis order (degree, then lex).
std::string basis_text(const Comodule& m);

// Margolis homology dims as "t<TAB>dim" lines, t ascending.
std::string margolis_text(const std::vector<MargolisSlice>& slices);

// Chart as TSV: header, then one "s<TAB>t<TAB>dim<TAB>gens" row per nonzero
// cell sorted by (s, t), generators ;-separated.
std::string chart_tsv(const ExtChart& chart);

// Chart as JSON: {prime, module, window, cells:[{s,t,dim,gens,v0,..,vn}]},
// where the v_i fields name target classes, "0" for killed, "?" for out of
// window.
std::string chart_json(const ExtChart& chart);

// Chart as SVG: x = t-s, y = s, one dot per cell with a multiplicity label
// when dim > 1; v_0 lines solid, v_1 dashed, v_2 dotted.
std::string chart_svg(const ExtChart& chart);

}  // namespace coops
