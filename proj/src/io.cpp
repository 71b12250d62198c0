#include "qcw/io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

namespace qcw::io {

namespace {

const Json& require_field(const Json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end()) {
    std::ostringstream msg;
    msg << what << ": missing required field \"" << key << "\"";
    throw InvalidInput(msg.str());
  }
  return *it;
}

}  // namespace

Json matrix_to_json(const CMat& m) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      data.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

CMat matrix_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidInput("matrix: expected a JSON object");
  const auto rows = require_field(j, "rows", "matrix").get<Eigen::Index>();
  const auto cols = require_field(j, "cols", "matrix").get<Eigen::Index>();
  const Json& data = require_field(j, "data", "matrix");
  if (rows < 1 || cols < 1)
    throw InvalidInput("matrix: rows and cols must be positive");
  if (!data.is_array() || Eigen::Index(data.size()) != rows * cols) {
    std::ostringstream msg;
    msg << "matrix: data has " << data.size() << " entries, expected "
        << rows * cols;
    throw InvalidInput(msg.str());
  }
  CMat m(rows, cols);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index jj = 0; jj < cols; ++jj, ++k) {
      const Json& entry = data[k];
      if (!entry.is_array() || entry.size() != 2)
        throw InvalidInput("matrix: each entry must be a [re, im] pair");
      m(i, jj) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  if (!m.allFinite()) throw InvalidInput("matrix: entries contain NaN or Inf");
  return m;
}

Json vector_to_json(const CVec& v) { return matrix_to_json(v); }

CVec vector_from_json(const Json& j) {
  const CMat m = matrix_from_json(j);
  if (m.cols() != 1) {
    std::ostringstream msg;
    msg << "vector: expected cols = 1, got " << m.cols();
    throw InvalidInput(msg.str());
  }
  return m.col(0);
}

Json channel_to_json(const KrausChannel& ch) {
  Json terms = Json::array();
  for (const KrausTerm& t : ch.terms())
    terms.push_back(Json{{"weight", t.weight}, {"op", matrix_to_json(t.op)}});
  return Json{
      {"d", ch.dims().d}, {"tag", to_string(ch.tag())}, {"terms", terms}};
}

KrausChannel channel_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidInput("channel: expected a JSON object");
  const int d = require_field(j, "d", "channel").get<int>();
  const std::string tag_name = require_field(j, "tag", "channel").get<std::string>();
  ChannelTag tag;
  if (tag_name == "general")
    tag = ChannelTag::General;
  else if (tag_name == "ru")
    tag = ChannelTag::RU;
  else if (tag_name == "rp")
    tag = ChannelTag::RP;
  else {
    std::ostringstream msg;
    msg << "channel: unknown tag \"" << tag_name
        << "\" (expected general, ru, or rp)";
    throw InvalidInput(msg.str());
  }
  const Json& jterms = require_field(j, "terms", "channel");
  if (!jterms.is_array()) throw InvalidInput("channel: terms must be an array");
  std::vector<KrausTerm> terms;
  terms.reserve(jterms.size());
  for (const Json& jt : jterms) {
    KrausTerm t;
    t.weight = require_field(jt, "weight", "channel term").get<double>();
    t.op = matrix_from_json(require_field(jt, "op", "channel term"));
    terms.push_back(std::move(t));
  }
  return KrausChannel(BipartiteDims{d}, std::move(terms), tag);
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput("JSON parse failure in " + path + ": " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot open file for writing: " + path);
  out << j.dump(2) << "\n";
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open file: " + path);
  std::uint64_t hash = 0xcbf29ce484222325ull;
  char c;
  while (in.get(c)) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ull;
  }
  std::ostringstream hex;
  hex << std::hex;
  hex.width(16);
  hex.fill('0');
  hex << hash;
  return hex.str();
}

Json Report::to_json() const {
  return Json{{"command", command},
              {"inputs", inputs},
              {"results", results},
              {"version", version}};
}

Report Report::from_json(const Json& j) {
  Report r;
  r.command = require_field(j, "command", "report").get<std::string>();
  r.inputs = require_field(j, "inputs", "report");
  r.results = require_field(j, "results", "report");
  r.version = require_field(j, "version", "report").get<std::string>();
  return r;
}

}  // namespace qcw::io
