#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mirs/engine.hpp"
#include "mirs/matrix.hpp"

namespace mirs::io {

// Matrix-set document shape:
//   {"name": "...", "dim": d, "claimed_jsr": 1.0,
//    "matrices": [{"name": "...", "rows": [[...], ...]}, ...]}
// name and claimed_jsr are optional.  Numbers are read as 64-bit reals; a
// round-trip through text reproduces them bit for bit.
MatrixSet parse_set(const nlohmann::json& doc);
nlohmann::json set_to_json(const MatrixSet& set);

// File variants; read failures and malformed documents surface as
// DegenerateInput with the parser's message.
MatrixSet load_set(const std::string& path);
void save_set(const MatrixSet& set, const std::string& path);

// Witness words as dot-separated member indices, e.g. "0.1.1".
std::string witness_string(const std::vector<int>& word);

// CSV rows n,a_n,certificate,witness with 17-significant-digit values.
std::string result_to_csv(const MirsResult& result);

// Sidecar document with the method line, certificates and witnesses.
nlohmann::json result_to_json(const MirsResult& result);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace mirs::io
