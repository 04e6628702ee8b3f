#include "bzi/json_io.hpp"

#include <cmath>
#include <fstream>

#include "bzi/errors.hpp"

namespace bzi {

namespace {

using nlohmann::json;

const json& require(const json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key)) {
        throw IoError(std::string(what) + ": missing key '" + key + "'");
    }
    return j.at(key);
}

int read_dim(const json& j, const char* what) {
    const json& d = require(j, "d", what);
    if (!d.is_number_integer() || d.get<long long>() < 1) {
        throw IoError(std::string(what) + ": 'd' must be a positive integer");
    }
    return d.get<int>();
}

double read_finite(const json& j, const char* what) {
    if (!j.is_number()) {
        throw IoError(std::string(what) + ": expected a number");
    }
    const double x = j.get<double>();
    if (!std::isfinite(x)) {
        throw IoError(std::string(what) + ": non-finite number");
    }
    return x;
}

}  // namespace

json matrix_to_json(const Mat& m) {
    json entries = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) {
            entries.push_back({m(r, c).real(), m(r, c).imag()});
        }
    }
    return json{{"d", m.rows()}, {"entries", std::move(entries)}};
}

Mat matrix_from_json(const json& j) {
    const int d = read_dim(j, "matrix");
    const json& entries = require(j, "entries", "matrix");
    if (!entries.is_array() ||
        entries.size() != static_cast<std::size_t>(d) * static_cast<std::size_t>(d)) {
        throw IoError("matrix: 'entries' must hold d*d pairs");
    }
    Mat m(d, d);
    std::size_t k = 0;
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c, ++k) {
            const json& e = entries.at(k);
            if (!e.is_array() || e.size() != 2) {
                throw IoError("matrix: each entry must be a [re, im] pair");
            }
            m(r, c) = Complex(read_finite(e.at(0), "matrix entry"),
                              read_finite(e.at(1), "matrix entry"));
        }
    }
    return m;
}

json scheme_to_json(const MeasurementScheme& s) {
    json povms = json::array();
    for (const Povm& p : s.povms) {
        json one = json::array();
        for (const HermitianOperator& e : p.elements) {
            one.push_back(matrix_to_json(e.mat()));
        }
        povms.push_back(std::move(one));
    }
    json j{{"variant", variant_name(s.variant)}, {"d", s.d}, {"povms", std::move(povms)}};
    if (s.kappa) {
        j["kappa"] = *s.kappa;
    }
    if (s.a_param) {
        j["a"] = *s.a_param;
    }
    return j;
}

MeasurementScheme scheme_from_json(const json& j) {
    MeasurementScheme s;
    const json& variant = require(j, "variant", "scheme");
    if (!variant.is_string()) {
        throw IoError("scheme: 'variant' must be a string");
    }
    try {
        s.variant = variant_from_name(variant.get<std::string>());
    } catch (const std::exception& e) {
        throw IoError(std::string("scheme: ") + e.what());
    }
    s.d = read_dim(j, "scheme");
    const json& povms = require(j, "povms", "scheme");
    if (!povms.is_array() || povms.empty()) {
        throw IoError("scheme: 'povms' must be a nonempty array");
    }
    for (const json& group : povms) {
        if (!group.is_array() || group.empty()) {
            throw IoError("scheme: each POVM must be a nonempty array of matrices");
        }
        Povm p;
        p.d = s.d;
        p.label = variant_name(s.variant) + "-" + std::to_string(s.povms.size());
        for (const json& mj : group) {
            Mat m = matrix_from_json(mj);
            if (m.rows() != s.d) {
                throw IoError("scheme: element dimension disagrees with 'd'");
            }
            try {
                p.elements.emplace_back(m);
            } catch (const std::exception& e) {
                throw IoError(std::string("scheme: element is not Hermitian: ") + e.what());
            }
        }
        s.povms.push_back(std::move(p));
    }
    if (j.contains("kappa")) {
        s.kappa = read_finite(j.at("kappa"), "scheme 'kappa'");
    }
    if (j.contains("a")) {
        s.a_param = read_finite(j.at("a"), "scheme 'a'");
    }
    return s;
}

json channel_to_json(const KrausChannel& c) {
    json kraus = json::array();
    for (const Mat& k : c.kraus()) {
        kraus.push_back(matrix_to_json(k));
    }
    return json{{"d", c.dim()}, {"kraus", std::move(kraus)}};
}

KrausChannel channel_from_json(const json& j, bool checked) {
    const int d = read_dim(j, "channel");
    const json& kraus = require(j, "kraus", "channel");
    if (!kraus.is_array() || kraus.empty()) {
        throw IoError("channel: 'kraus' must be a nonempty array");
    }
    std::vector<Mat> ops;
    for (const json& mj : kraus) {
        Mat m = matrix_from_json(mj);
        if (m.rows() != d) {
            throw IoError("channel: operator dimension disagrees with 'd'");
        }
        ops.push_back(std::move(m));
    }
    if (!checked) {
        return KrausChannel::unchecked(std::move(ops));
    }
    try {
        return KrausChannel(std::move(ops));
    } catch (const std::exception& e) {
        throw IoError(std::string("channel: ") + e.what());
    }
}

json state_to_json(const DensityOperator& rho) { return matrix_to_json(rho.mat()); }

DensityOperator state_from_json(const json& j) {
    Mat m = matrix_from_json(j);
    try {
        return DensityOperator(m);
    } catch (const std::exception& e) {
        throw IoError(std::string("state: not a density operator: ") + e.what());
    }
}

json shot_record_to_json(const ShotRecord& r) {
    json j{{"scheme", scheme_to_json(r.scheme)},
           {"N", r.shots},
           {"seed", r.seed},
           {"counts", r.counts}};
    if (r.eta) {
        j["eta"] = *r.eta;
    }
    return j;
}

ShotRecord shot_record_from_json(const json& j, const std::filesystem::path& base_dir) {
    ShotRecord r;
    const json& scheme = require(j, "scheme", "shot record");
    if (scheme.is_string()) {
        std::filesystem::path ref(scheme.get<std::string>());
        if (ref.is_relative()) {
            ref = base_dir / ref;
        }
        r.scheme = load_scheme(ref);
    } else {
        r.scheme = scheme_from_json(scheme);
    }
    const json& n = require(j, "N", "shot record");
    if (!n.is_number_integer() || n.get<long long>() < 1) {
        throw IoError("shot record: 'N' must be a positive integer");
    }
    r.shots = n.get<long long>();
    const json& seed = require(j, "seed", "shot record");
    const bool negative = !seed.is_number_unsigned() && seed.is_number_integer() &&
                          seed.get<long long>() < 0;
    if (!seed.is_number_integer() || negative) {
        throw IoError("shot record: 'seed' must be a nonnegative integer");
    }
    r.seed = seed.get<std::uint64_t>();
    if (j.contains("eta")) {
        r.eta = read_finite(j.at("eta"), "shot record 'eta'");
    }
    const json& counts = require(j, "counts", "shot record");
    if (!counts.is_array()) {
        throw IoError("shot record: 'counts' must be an array of arrays");
    }
    for (const json& row : counts) {
        if (!row.is_array()) {
            throw IoError("shot record: 'counts' must be an array of arrays");
        }
        std::vector<long long> one;
        for (const json& c : row) {
            if (!c.is_number_integer() || c.get<long long>() < 0) {
                throw IoError("shot record: counts must be nonnegative integers");
            }
            one.push_back(c.get<long long>());
        }
        r.counts.push_back(std::move(one));
    }
    return r;
}

json load_json(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) {
        throw IoError("cannot open file: " + file.string());
    }
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw IoError("cannot parse " + file.string() + ": " + e.what());
    }
}

void save_json(const std::filesystem::path& file, const json& j) {
    std::ofstream out(file);
    if (!out) {
        throw IoError("cannot open file for writing: " + file.string());
    }
    out << to_stable_string(j);
    if (!out) {
        throw IoError("failed writing file: " + file.string());
    }
}

MeasurementScheme load_scheme(const std::filesystem::path& file) {
    return scheme_from_json(load_json(file));
}

KrausChannel load_channel(const std::filesystem::path& file, bool checked) {
    return channel_from_json(load_json(file), checked);
}

DensityOperator load_state(const std::filesystem::path& file) {
    return state_from_json(load_json(file));
}

ShotRecord load_shots(const std::filesystem::path& file) {
    return shot_record_from_json(load_json(file), file.parent_path());
}

void save_shots(const std::filesystem::path& file, const ShotRecord& r) {
    save_json(file, shot_record_to_json(r));
}

std::string to_stable_string(const json& j) { return j.dump(2) + "\n"; }

}  // namespace bzi
