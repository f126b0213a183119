// Copyright 2026 The nepec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nepec/serialization.hpp"

#include <cmath>
#include <fstream>

namespace nepec {

using nlohmann::json;

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) {
        throw ValidationError("json: " + what);
    }
}

}  // namespace

json matrix_to_json(const CMatrix& m) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            arr.push_back({m(i, j).real(), m(i, j).imag()});
        }
    }
    return arr;
}

CMatrix matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols) {
    require(j.is_array() && static_cast<Eigen::Index>(j.size()) == rows * cols,
            "matrix entry count must be rows*cols");
    CMatrix m(rows, cols);
    Eigen::Index k = 0;
    for (const auto& entry : j) {
        require(entry.is_array() && entry.size() == 2, "matrix entries must be [re, im] pairs");
        m(k / cols, k % cols) = Complex(entry[0].get<double>(), entry[1].get<double>());
        ++k;
    }
    return m;
}

json circuit_to_json(const Circuit& c) {
    json gates = json::array();
    for (const GateSpec& g : c.gates) {
        gates.push_back({{"label", g.label}, {"matrix", matrix_to_json(g.unitary)}, {"targets", g.targets}});
    }
    return {{"qubits", c.num_qubits}, {"gates", gates}};
}

Circuit circuit_from_json(const json& j) {
    require(j.is_object() && j.contains("qubits") && j.contains("gates"),
            "circuit needs 'qubits' and 'gates'");
    Circuit c;
    c.num_qubits = j.at("qubits").get<int>();
    require(j.at("gates").is_array(), "'gates' must be an array");
    for (const auto& gj : j.at("gates")) {
        require(gj.contains("label") && gj.contains("matrix") && gj.contains("targets"),
                "gate needs 'label', 'matrix', 'targets'");
        GateSpec g;
        g.label = gj.at("label").get<std::string>();
        g.targets = gj.at("targets").get<std::vector<int>>();
        const Eigen::Index d = Eigen::Index(1) << g.targets.size();
        g.unitary = matrix_from_json(gj.at("matrix"), d, d);
        c.gates.push_back(std::move(g));
    }
    c.validate();
    return c;
}

json noise_model_to_json(const NoiseModel& model) {
    json j{{"kind", model.kind == NoiseKind::Depolarizing ? "depolarizing" : "amplitude_damping"},
           {"p", model.p},
           {"qubits", model.num_qubits}};
    if (model.kind == NoiseKind::AmplitudeDamping) {
        j["scaling"] = model.amp_damp_scaling == AmpDampScaling::OnPPrime ? "p_prime" : "p";
    }
    return j;
}

NoiseModel noise_model_from_json(const json& j) {
    require(j.is_object() && j.contains("kind") && j.contains("p") && j.contains("qubits"),
            "noise model needs 'kind', 'p', 'qubits'");
    NoiseModel model;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "depolarizing") {
        model.kind = NoiseKind::Depolarizing;
    } else if (kind == "amplitude_damping") {
        model.kind = NoiseKind::AmplitudeDamping;
    } else {
        throw ValidationError("json: unknown noise kind '" + kind + "'");
    }
    model.p = j.at("p").get<double>();
    model.num_qubits = j.at("qubits").get<int>();
    if (j.contains("scaling")) {
        const std::string scaling = j.at("scaling").get<std::string>();
        require(scaling == "p" || scaling == "p_prime", "'scaling' must be 'p' or 'p_prime'");
        model.amp_damp_scaling = scaling == "p_prime" ? AmpDampScaling::OnPPrime : AmpDampScaling::OnP;
    }
    model.validate();
    return model;
}

json superop_to_json(const Superoperator& s) {
    return {{"dim", s.dim()}, {"matrix", matrix_to_json(s.matrix())}};
}

Superoperator superop_from_json(const json& j) {
    require(j.is_object() && j.contains("dim") && j.contains("matrix"),
            "superoperator needs 'dim' and 'matrix'");
    const Eigen::Index d = j.at("dim").get<Eigen::Index>();
    require(d >= 2 && d <= 16, "superoperator dim must be in [2, 16]");
    return Superoperator(d, matrix_from_json(j.at("matrix"), d * d, d * d));
}

json rep_to_json(const QuasiProbRep& rep) {
    double gamma_plus = 0.0;
    double gamma_minus = 0.0;
    json terms = json::array();
    for (const RepTerm& t : rep.terms) {
        (t.eta >= 0.0 ? gamma_plus : gamma_minus) += std::abs(t.eta);
        terms.push_back({{"eta", t.eta}, {"label", t.op.label}, {"lambda", t.op.lambda}});
    }
    json j{{"target", rep.target_label},
           {"gamma", one_norm(rep)},
           {"gamma_plus", gamma_plus},
           {"gamma_minus", gamma_minus},
           {"residual", rep.residual},
           {"terms", terms}};
    if (rep.bias_note) {
        j["bias_note"] = *rep.bias_note;
    }
    return j;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open file: " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ValidationError("cannot parse " + path + ": " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) {
        throw ValidationError("cannot write file: " + path);
    }
    out << j.dump(2) << "\n";
}

}  // namespace nepec
