#include "minkit/state_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "minkit/errors.hpp"

namespace minkit {

namespace {
using nlohmann::json;
}

std::string state_to_json(const DensityMatrix& rho) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < rho.matrix.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < rho.matrix.cols(); ++j) {
      row.push_back({rho.matrix(i, j).real(), rho.matrix(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  json doc{{"m", rho.m}, {"n", rho.n}, {"matrix", std::move(rows)}};
  return doc.dump(2);
}

DensityMatrix state_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("state file: invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("m") || !doc.contains("n") ||
      !doc.contains("matrix")) {
    throw ParseError("state file: expected object with m, n, matrix");
  }
  int m = 0, n = 0;
  try {
    m = doc["m"].get<int>();
    n = doc["n"].get<int>();
  } catch (const json::exception&) {
    throw ParseError("state file: m and n must be integers");
  }
  if (m < 1 || n < 1) throw ParseError("state file: m and n must be >= 1");
  const json& rows = doc["matrix"];
  if (!rows.is_array() ||
      rows.size() != static_cast<std::size_t>(m) * n) {
    throw ParseError("state file: matrix must have m*n rows");
  }
  ComplexMatrix M(m * n, m * n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const json& row = rows[i];
    if (!row.is_array() || row.size() != rows.size()) {
      throw ParseError("state file: matrix row " + std::to_string(i) +
                       " has wrong length");
    }
    for (std::size_t j = 0; j < row.size(); ++j) {
      const json& entry = row[j];
      if (!entry.is_array() || entry.size() != 2 ||
          !entry[0].is_number() || !entry[1].is_number()) {
        throw ParseError("state file: entry (" + std::to_string(i) + ", " +
                         std::to_string(j) + ") is not an [re, im] pair");
      }
      M(i, j) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return make_density(std::move(M), m, n);
}

DensityMatrix load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open state file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return state_from_json(buf.str());
}

void save_state(const std::string& path, const DensityMatrix& rho) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write state file: " + path);
  out << state_to_json(rho) << "\n";
}

}  // namespace minkit
