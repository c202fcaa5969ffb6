/*
   svg_plot.hpp

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

#ifndef AMYPET_SVG_PLOT_HPP
#define AMYPET_SVG_PLOT_HPP

#include <string>

#include "amypet/metrics.hpp"

namespace amypet {

/// Static ROC plot: unit axes, chance diagonal, the curve polyline and an
/// AUC annotation. No plotting dependency; plain hand-built SVG.
std::string render_roc_svg(const RocCurve& curve, double auc, const std::string& provenance);

} // namespace amypet

#endif // AMYPET_SVG_PLOT_HPP
