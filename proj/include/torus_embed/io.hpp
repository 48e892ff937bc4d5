#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>

#include "json.hpp"

#include "torus_embed/geometry.hpp"
#include "torus_embed/pipeline.hpp"

namespace torus_embed::io {

using Json = nlohmann::ordered_json;

// Serializes with a fixed layout: two-space indentation, arrays of scalars
// on one line, doubles with 17 significant digits. Parsing the output and
// dumping again reproduces it byte for byte.
std::string dump_canonical(const Json& value);

// Either form accepted by `embed`: {"points": [...]} or
// {"squared_distances": [...]}. Throws InputError on anything else.
using EmbedInput = std::variant<PointSet, SquaredDistanceMatrix>;
EmbedInput parse_input(const Json& doc);
Json points_to_json(const PointSet& points);

Json certificate_to_json(const EmbeddingCertificate& c);

// Throws InvalidCertificate naming the offending field. `parameters`,
// `errors` and `meta` are optional; an empty `parameters` object counts as
// absent.
EmbeddingCertificate certificate_from_json(const Json& doc);

// Summary printed by `inspect`.
Json inspect_summary(const EmbeddingCertificate& c);

Json report_to_json(const VerificationReport& r);

// File helpers; both throw InputError with the path in the message.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);
// read_file + parse; malformed JSON becomes InputError.
Json read_json(const std::filesystem::path& path);

}  // namespace torus_embed::io
