#include "mirs/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace mirs::io {

namespace {

std::string seventeen(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* cert_token(Cert kind) {
  switch (kind) {
    case Cert::Exact:
      return "Exact";
    case Cert::LowerBound:
      return "LowerBound";
    case Cert::Interval:
      return "Interval";
  }
  return "?";
}

}  // namespace

MatrixSet parse_set(const nlohmann::json& doc) {
  try {
    MatrixSet set;
    set.dim = doc.at("dim").get<int>();
    set.name = doc.value("name", std::string("set"));
    if (doc.contains("claimed_jsr") && !doc.at("claimed_jsr").is_null())
      set.claimed_jsr = doc.at("claimed_jsr").get<double>();
    const auto& mats = doc.at("matrices");
    if (!mats.is_array() || mats.empty())
      throw DegenerateInput("matrix set document has no matrices");
    int index = 0;
    for (const auto& entry : mats) {
      const auto rows = entry.at("rows").get<std::vector<std::vector<double>>>();
      set.members.push_back(Matrix::from_rows(rows));
      set.labels.push_back(
          entry.value("name", "m" + std::to_string(index)));
      ++index;
    }
    set.validate();
    return set;
  } catch (const nlohmann::json::exception& e) {
    throw DegenerateInput(std::string("malformed matrix set document: ") +
                          e.what());
  }
}

nlohmann::json set_to_json(const MatrixSet& set) {
  set.validate();
  nlohmann::json doc;
  doc["name"] = set.name;
  doc["dim"] = set.dim;
  if (set.claimed_jsr) doc["claimed_jsr"] = *set.claimed_jsr;
  doc["matrices"] = nlohmann::json::array();
  for (std::size_t i = 0; i < set.size(); ++i) {
    nlohmann::json m;
    m["name"] = set.labels[i];
    auto rows = nlohmann::json::array();
    for (int r = 0; r < set.members[i].rows(); ++r) {
      auto row = nlohmann::json::array();
      for (int c = 0; c < set.members[i].cols(); ++c)
        row.push_back(set.members[i].at(r, c));
      rows.push_back(std::move(row));
    }
    m["rows"] = std::move(rows);
    doc["matrices"].push_back(std::move(m));
  }
  return doc;
}

MatrixSet load_set(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_set(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw DegenerateInput(std::string("cannot parse ") + path + ": " +
                          e.what());
  }
}

void save_set(const MatrixSet& set, const std::string& path) {
  write_file(path, set_to_json(set).dump(2) + "\n");
}

std::string witness_string(const std::vector<int>& word) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(word[i]);
  }
  return out;
}

std::string result_to_csv(const MirsResult& result) {
  std::string out = "n,a_n,certificate,witness\n";
  for (int n = 1; n <= result.horizon; ++n) {
    out += std::to_string(n);
    out += ',';
    out += seventeen(result.at(n));
    out += ',';
    out += cert_token(result.cert(n).kind);
    out += ',';
    out += witness_string(result.witnesses[static_cast<std::size_t>(n) - 1]);
    out += '\n';
  }
  return out;
}

nlohmann::json result_to_json(const MirsResult& result) {
  nlohmann::json doc;
  doc["set"] = result.set_label;
  doc["horizon"] = result.horizon;
  doc["method"] = result.method;
  doc["exact_prefix"] = result.exact_prefix();
  doc["values"] = result.values;
  auto certs = nlohmann::json::array();
  for (int n = 1; n <= result.horizon; ++n) {
    const Certificate& c = result.cert(n);
    nlohmann::json jc;
    jc["kind"] = cert_token(c.kind);
    if (c.kind == Cert::Interval) {
      jc["lo"] = c.lo;
      jc["hi"] = c.hi;
    }
    certs.push_back(std::move(jc));
  }
  doc["certificates"] = std::move(certs);
  auto wits = nlohmann::json::array();
  for (const auto& w : result.witnesses) wits.push_back(witness_string(w));
  doc["witnesses"] = std::move(wits);
  return doc;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DegenerateInput("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DegenerateInput("cannot write " + path);
  out << content;
  if (!out) throw DegenerateInput("write failed for " + path);
}

}  // namespace mirs::io
