#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "bzi/channels.hpp"
#include "bzi/measurements.hpp"
#include "bzi/probe.hpp"

namespace bzi {

// Matrix documents: {"d": n, "entries": [[re, im] x n^2]} in row-major
// order. Every parser below throws IoError on missing keys, wrong entry
// counts, or non-finite numbers.
nlohmann::json matrix_to_json(const Mat& m);
Mat matrix_from_json(const nlohmann::json& j);

// Scheme documents: {"variant", "d", "kappa"?, "a"?, "povms": [[matrix...]]}.
nlohmann::json scheme_to_json(const MeasurementScheme& s);
MeasurementScheme scheme_from_json(const nlohmann::json& j);

// Channel documents: {"d", "kraus": [matrix...]}. With checked set the
// Kraus family must close to the identity; unchecked loads are for the
// diagnostic path.
nlohmann::json channel_to_json(const KrausChannel& c);
KrausChannel channel_from_json(const nlohmann::json& j, bool checked = true);

// States are stored as plain matrix documents.
nlohmann::json state_to_json(const DensityOperator& rho);
DensityOperator state_from_json(const nlohmann::json& j);

// Shot records: {"scheme": <inline scheme or file path>, "N", "seed",
// "eta"?, "counts"}. A string scheme is resolved against base_dir.
nlohmann::json shot_record_to_json(const ShotRecord& r);
ShotRecord shot_record_from_json(const nlohmann::json& j,
                                 const std::filesystem::path& base_dir = {});

nlohmann::json load_json(const std::filesystem::path& file);
void save_json(const std::filesystem::path& file, const nlohmann::json& j);

MeasurementScheme load_scheme(const std::filesystem::path& file);
KrausChannel load_channel(const std::filesystem::path& file, bool checked = true);
DensityOperator load_state(const std::filesystem::path& file);
ShotRecord load_shots(const std::filesystem::path& file);
void save_shots(const std::filesystem::path& file, const ShotRecord& r);

// Canonical rendering: two-space indent, alphabetical keys, trailing
// newline. Repeated runs emit byte-identical documents.
std::string to_stable_string(const nlohmann::json& j);

}  // namespace bzi
