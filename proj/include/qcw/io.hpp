#ifndef QCW_IO_HPP
#define QCW_IO_HPP

// JSON file formats shared between the library and the CLI: matrices and
// vectors, Kraus channels, and the report envelope every command emits.

#include <string>

#include <json.hpp>

#include "qcw/channels.hpp"
#include "qcw/types.hpp"

namespace qcw {

inline constexpr const char* kVersion = "0.1.0";

namespace io {

using Json = nlohmann::ordered_json;

// {"rows": n, "cols": m, "data": [[re, im], ...]} row-major; vectors use
// cols = 1.
Json matrix_to_json(const CMat& m);
CMat matrix_from_json(const Json& j);

Json vector_to_json(const CVec& v);
CVec vector_from_json(const Json& j);

// {"d": n, "tag": "general|ru|rp", "terms": [{"weight": w, "op": <matrix>}]}.
Json channel_to_json(const KrausChannel& ch);
KrausChannel channel_from_json(const Json& j);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

// FNV-1a 64-bit digest of the file bytes, as 16 hex characters.
std::string file_digest(const std::string& path);

// Envelope for CLI output; round-trips losslessly through JSON.
struct Report {
  std::string command;
  Json inputs = Json::object();
  Json results = Json::object();
  std::string version = kVersion;

  Json to_json() const;
  static Report from_json(const Json& j);
};

}  // namespace io
}  // namespace qcw

#endif  // QCW_IO_HPP
