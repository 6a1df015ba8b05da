#ifndef PSDLAT_MATRIX_IO_HPP
#define PSDLAT_MATRIX_IO_HPP

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "psdlat/forms.hpp"
#include "psdlat/psd_core.hpp"

namespace psdlat {

/// File format shared by every tool: a single JSON document with fields
///   dim      positive integer n
///   complex  boolean
///   data     row-major list of n*n entries; each entry is a real number,
///            or a two-element [re, im] list when complex is true
/// Form files carry an extra `space_dim` (equal to dim) and an optional
/// `label`.  Parsers reject non-square data.

inline Matrix matrix_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("matrix document must be a JSON object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer())
    throw ParseError("matrix document needs an integer `dim`");
  const long long dim = doc["dim"].get<long long>();
  if (dim < 1) throw ParseError("`dim` must be a positive integer");
  const bool is_complex = doc.value("complex", false);
  if (!doc.contains("data") || !doc["data"].is_array())
    throw ParseError("matrix document needs a `data` array");
  const nlohmann::json& data = doc["data"];
  if (static_cast<long long>(data.size()) != dim * dim) {
    std::ostringstream os;
    os << "non-square data: expected " << dim * dim << " entries for dim " << dim
       << ", got " << data.size();
    throw ParseError(os.str());
  }
  Matrix m(dim, dim);
  for (long long i = 0; i < dim; ++i) {
    for (long long j = 0; j < dim; ++j) {
      const nlohmann::json& cell = data[static_cast<std::size_t>(i * dim + j)];
      if (is_complex) {
        if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
            !cell[1].is_number())
          throw ParseError("complex entries must be [re, im] pairs of numbers");
        m(i, j) = Complex(cell[0].get<double>(), cell[1].get<double>());
      } else {
        if (!cell.is_number())
          throw ParseError("real entries must be plain numbers");
        m(i, j) = Complex(cell.get<double>(), 0.0);
      }
    }
  }
  return m;
}

inline nlohmann::json matrix_to_json(const Matrix& m) {
  if (m.rows() != m.cols()) throw ParseError("only square matrices are written");
  bool is_complex = false;
  for (Eigen::Index i = 0; i < m.rows() && !is_complex; ++i)
    for (Eigen::Index j = 0; j < m.cols() && !is_complex; ++j)
      if (m(i, j).imag() != 0.0) is_complex = true;
  nlohmann::json doc;
  doc["dim"] = m.rows();
  doc["complex"] = is_complex;
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (is_complex)
        data.push_back({m(i, j).real(), m(i, j).imag()});
      else
        data.push_back(m(i, j).real());
    }
  }
  doc["data"] = std::move(data);
  return doc;
}

inline Matrix read_matrix(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid matrix document: ") + e.what());
  }
  return matrix_from_json(doc);
}

inline Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open matrix file: " + path);
  return read_matrix(in);
}

inline void write_matrix(std::ostream& out, const Matrix& m) {
  out << matrix_to_json(m).dump(2) << "\n";
}

inline void write_matrix_file(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open matrix file for writing: " + path);
  write_matrix(out, m);
}

inline Form form_from_json(const nlohmann::json& doc, const Tolerances& tol = {}) {
  const Matrix gram = matrix_from_json(doc);
  if (doc.contains("space_dim")) {
    if (!doc["space_dim"].is_number_integer() ||
        doc["space_dim"].get<long long>() != gram.rows())
      throw ParseError("form document: `space_dim` must equal `dim`");
  }
  const std::string label = doc.value("label", std::string{});
  return Form(PsdMatrix(gram, tol), label);
}

inline nlohmann::json form_to_json(const Form& f) {
  nlohmann::json doc = matrix_to_json(f.gram().matrix());
  doc["space_dim"] = f.space_dim();
  if (!f.label().empty()) doc["label"] = f.label();
  return doc;
}

inline Form read_form_file(const std::string& path, const Tolerances& tol = {}) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open form file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid form document: ") + e.what());
  }
  return form_from_json(doc, tol);
}

inline void write_form_file(const std::string& path, const Form& f) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open form file for writing: " + path);
  out << form_to_json(f).dump(2) << "\n";
}

} // namespace psdlat

#endif
