/*
   svm.cpp

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

#include "amypet/svm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "amypet/csv.hpp"
#include "amypet/errors.hpp"

#include "json.hpp"

namespace amypet {

double cubic_kernel(std::span<const double> x, std::span<const double> z,
                    const KernelParams& k) {
    if (x.size() != z.size())
        throw LengthMismatch("kernel arguments differ in length: " + std::to_string(x.size()) +
                             " vs " + std::to_string(z.size()));
    double dot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * z[i];
    const double t = k.offset + dot / (k.scale * k.scale);
    return t * t * t;
}

std::vector<double> Standardization::apply(std::span<const double> row) const {
    if (row.size() != means.size())
        throw LengthMismatch("row has " + std::to_string(row.size()) + " features, expected " +
                             std::to_string(means.size()));
    std::vector<double> out(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) out[i] = (row[i] - means[i]) / stds[i];
    return out;
}

Standardization standardize_fit(const std::vector<std::vector<double>>& rows) {
    if (rows.size() < 2)
        throw TooFewRows("standardization needs at least 2 rows, got " +
                         std::to_string(rows.size()));
    const std::size_t d = rows[0].size();
    const double n = static_cast<double>(rows.size());

    Standardization s;
    s.means.assign(d, 0.0);
    s.stds.assign(d, 0.0);
    for (const auto& row : rows) {
        if (row.size() != d) throw LengthMismatch("ragged feature matrix");
        for (std::size_t j = 0; j < d; ++j) s.means[j] += row[j];
    }
    for (double& m : s.means) m /= n;
    for (const auto& row : rows)
        for (std::size_t j = 0; j < d; ++j) {
            const double dev = row[j] - s.means[j];
            s.stds[j] += dev * dev;
        }
    for (std::size_t j = 0; j < d; ++j) {
        s.stds[j] = std::sqrt(s.stds[j] / n); // population stddev
        if (s.stds[j] < 1e-12) {
            s.stds[j] = 1.0;
            s.constant_columns.push_back(static_cast<int>(j));
        }
    }
    return s;
}

double SvmModel::decision_value(std::span<const double> raw_features) const {
    return decision_value_standardized(standardization.apply(raw_features));
}

double SvmModel::decision_value_standardized(std::span<const double> row) const {
    if (row.size() != n_features())
        throw LengthMismatch("probe has " + std::to_string(row.size()) + " features, model has " +
                             std::to_string(n_features()));
    double f = bias;
    for (std::size_t i = 0; i < support_vectors.size(); ++i)
        f += dual_coeffs[i] * cubic_kernel(support_vectors[i], row, kernel);
    return f;
}

double PlattCalibration::positive_probability(double decision_value) const {
    const double t = a * decision_value + b;
    // numerically stable logistic
    if (t >= 0.0) {
        const double e = std::exp(-t);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(t));
}

PlattCalibration platt_calibrate(const std::vector<double>& decision_values,
                                 const std::vector<int>& labels, int max_iter) {
    if (decision_values.size() != labels.size())
        throw LengthMismatch("decision values and labels differ in length");
    const std::size_t n = decision_values.size();
    double n_pos = 0, n_neg = 0;
    for (int y : labels) (y > 0 ? n_pos : n_neg) += 1.0;
    if (n_pos == 0 || n_neg == 0)
        throw SingleClass("calibration needs both classes");

    // Smoothed targets keep the likelihood bounded on separable data.
    const double hi = (n_pos + 1.0) / (n_pos + 2.0);
    const double lo = 1.0 / (n_neg + 2.0);
    std::vector<double> target(n);
    for (std::size_t i = 0; i < n; ++i) target[i] = labels[i] > 0 ? hi : lo;

    const auto nll = [&](double a, double b) {
        double obj = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double fApB = a * decision_values[i] + b;
            if (fApB >= 0.0)
                obj += target[i] * fApB + std::log1p(std::exp(-fApB));
            else
                obj += (target[i] - 1.0) * fApB + std::log1p(std::exp(fApB));
        }
        return obj;
    };

    constexpr double kSigma = 1e-12; // Hessian ridge
    constexpr double kEps = 1e-10;   // gradient stopping threshold

    double a = 0.0;
    double b = std::log((n_neg + 1.0) / (n_pos + 1.0));
    double fval = nll(a, b);

    for (int it = 0; it < max_iter; ++it) {
        double h11 = kSigma, h22 = kSigma, h21 = 0.0, g1 = 0.0, g2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double f = decision_values[i];
            const double fApB = a * f + b;
            double p, q;
            if (fApB >= 0.0) {
                const double e = std::exp(-fApB);
                p = e / (1.0 + e);
                q = 1.0 / (1.0 + e);
            } else {
                const double e = std::exp(fApB);
                p = 1.0 / (1.0 + e);
                q = e / (1.0 + e);
            }
            const double d2 = p * q;
            h11 += f * f * d2;
            h22 += d2;
            h21 += f * d2;
            const double d1 = target[i] - p;
            g1 += f * d1;
            g2 += d1;
        }
        if (std::abs(g1) < kEps && std::abs(g2) < kEps)
            return PlattCalibration{a, b};

        const double det = h11 * h22 - h21 * h21;
        const double da = -(h22 * g1 - h21 * g2) / det;
        const double db = -(-h21 * g1 + h11 * g2) / det;
        const double gd = g1 * da + g2 * db;

        double step = 1.0;
        bool accepted = false;
        while (step >= 1e-10) {
            const double na = a + step * da;
            const double nb = b + step * db;
            const double nf = nll(na, nb);
            if (nf < fval + 1e-4 * step * gd) {
                a = na;
                b = nb;
                fval = nf;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted)
            throw NoConvergence("platt_calibrate: line search failed");
    }
    throw NoConvergence("platt_calibrate: no convergence in " + std::to_string(max_iter) +
                        " iterations");
}

namespace {

using nlohmann::json;

constexpr int kModelVersion = 1;

} // namespace

std::string save_model(const SvmModel& model) {
    json doc;
    doc["version"] = kModelVersion;
    doc["kernel"] = {{"degree", model.kernel.degree},
                     {"scale", model.kernel.scale},
                     {"offset", model.kernel.offset}};
    doc["C"] = model.box_constraint;
    doc["bias"] = model.bias;
    doc["standardization"] = {{"means", model.standardization.means},
                              {"stds", model.standardization.stds}};
    doc["support_vectors"] = model.support_vectors;
    doc["dual_coeffs"] = model.dual_coeffs;
    if (model.calibration)
        doc["calibration"] = {{"A", model.calibration->a}, {"B", model.calibration->b}};
    else
        doc["calibration"] = nullptr;
    doc["feature_region_ids"] = model.feature_region_ids;
    return doc.dump(2) + "\n";
}

SvmModel load_model(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw SchemaViolation(std::string("model document is not valid JSON: ") + e.what());
    }
    try {
        const int version = doc.at("version").get<int>();
        if (version != kModelVersion)
            throw SchemaViolation("model version is " + std::to_string(version) + ", expected " +
                                  std::to_string(kModelVersion));

        SvmModel m;
        const auto& k = doc.at("kernel");
        m.kernel.degree = k.at("degree").get<int>();
        m.kernel.scale = k.at("scale").get<double>();
        m.kernel.offset = k.at("offset").get<double>();
        m.box_constraint = doc.at("C").get<double>();
        m.bias = doc.at("bias").get<double>();
        m.standardization.means = doc.at("standardization").at("means").get<std::vector<double>>();
        m.standardization.stds = doc.at("standardization").at("stds").get<std::vector<double>>();
        m.support_vectors = doc.at("support_vectors").get<std::vector<std::vector<double>>>();
        m.dual_coeffs = doc.at("dual_coeffs").get<std::vector<double>>();
        if (!doc.at("calibration").is_null()) {
            PlattCalibration cal;
            cal.a = doc.at("calibration").at("A").get<double>();
            cal.b = doc.at("calibration").at("B").get<double>();
            m.calibration = cal;
        }
        m.feature_region_ids = doc.at("feature_region_ids").get<std::vector<int>>();

        if (m.kernel.degree != 3) throw SchemaViolation("kernel degree must be 3");
        if (!(m.kernel.scale > 0.0)) throw SchemaViolation("kernel scale must be positive");
        if (m.support_vectors.size() != m.dual_coeffs.size())
            throw SchemaViolation("support_vectors and dual_coeffs disagree in length");
        if (m.standardization.means.size() != m.standardization.stds.size())
            throw SchemaViolation("standardization means/stds disagree in length");
        for (const auto& sv : m.support_vectors)
            if (sv.size() != m.standardization.means.size())
                throw SchemaViolation("support vector length does not match standardization");
        for (double s : m.standardization.stds)
            if (!(s > 0.0)) throw SchemaViolation("standardization stddev must be positive");
        return m;
    } catch (const json::exception& e) {
        throw SchemaViolation(std::string("model document missing or mistyped field: ") +
                              e.what());
    }
}

void save_model_file(const SvmModel& model, const std::filesystem::path& path) {
    write_file_atomic(path, save_model(model));
}

SvmModel load_model_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_model(buf.str());
}

} // namespace amypet
