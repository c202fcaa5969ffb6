/*
   svg_plot.cpp

   Copyright 2026 the amypet authors.

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
 */

#include "amypet/svg_plot.hpp"

#include <cstdio>

namespace amypet {

namespace {

constexpr double kSize = 440.0;   // canvas edge
constexpr double kMargin = 60.0;  // room for axis labels

double px(double unit) { return kMargin + unit * (kSize - 2.0 * kMargin); }
double py(double unit) { return kSize - kMargin - unit * (kSize - 2.0 * kMargin); }

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

} // namespace

std::string render_roc_svg(const RocCurve& curve, double auc, const std::string& provenance) {
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kSize) + "\" height=\"" +
           num(kSize) + "\" viewBox=\"0 0 " + num(kSize) + " " + num(kSize) + "\">\n";
    if (!provenance.empty()) svg += "<!-- " + provenance + " -->\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // axes
    svg += "<line x1=\"" + num(px(0)) + "\" y1=\"" + num(py(0)) + "\" x2=\"" + num(px(1)) +
           "\" y2=\"" + num(py(0)) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + num(px(0)) + "\" y1=\"" + num(py(0)) + "\" x2=\"" + num(px(0)) +
           "\" y2=\"" + num(py(1)) + "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 5; ++t) {
        const double u = t / 5.0;
        svg += "<text x=\"" + num(px(u)) + "\" y=\"" + num(py(0) + 18) +
               "\" font-size=\"11\" text-anchor=\"middle\">" + num(u) + "</text>\n";
        svg += "<text x=\"" + num(px(0) - 8) + "\" y=\"" + num(py(u) + 4) +
               "\" font-size=\"11\" text-anchor=\"end\">" + num(u) + "</text>\n";
    }
    svg += "<text x=\"" + num(px(0.5)) + "\" y=\"" + num(kSize - 12) +
           "\" font-size=\"13\" text-anchor=\"middle\">False positive rate</text>\n";
    svg += "<text x=\"16\" y=\"" + num(py(0.5)) + "\" font-size=\"13\" text-anchor=\"middle\" " +
           "transform=\"rotate(-90 16 " + num(py(0.5)) + ")\">True positive rate</text>\n";

    // chance diagonal
    svg += "<line x1=\"" + num(px(0)) + "\" y1=\"" + num(py(0)) + "\" x2=\"" + num(px(1)) +
           "\" y2=\"" + num(py(1)) + "\" stroke=\"#999\" stroke-dasharray=\"5,4\"/>\n";

    svg += "<polyline fill=\"none\" stroke=\"#b22222\" stroke-width=\"2\" points=\"";
    for (const auto& [fpr, tpr] : curve.points) svg += num(px(fpr)) + "," + num(py(tpr)) + " ";
    svg += "\"/>\n";

    char auc_text[64];
    std::snprintf(auc_text, sizeof(auc_text), "AUC = %.3f", auc);
    svg += "<text x=\"" + num(px(0.55)) + "\" y=\"" + num(py(0.12)) +
           "\" font-size=\"15\">" + auc_text + "</text>\n";
    svg += "</svg>\n";
    return svg;
}

} // namespace amypet
