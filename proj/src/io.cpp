/// @file io.cpp
/// @brief Matrix file parsing and deterministic JSON serialization.

#include "kyfan/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace kyfan {

Matrix read_matrix(std::istream& in, const std::string& what) {
  long long rows = 0, cols = 0;
  if (!(in >> rows >> cols)) {
    throw KyfanError("INPUT_ERROR", what + ": expected header 'rows cols'");
  }
  if (rows < 1 || cols < 1 || rows > 4096 || cols > 4096) {
    throw KyfanError("INPUT_ERROR", what + ": invalid dimensions");
  }
  Matrix a(rows, cols);
  for (long long i = 0; i < rows; ++i) {
    for (long long j = 0; j < cols; ++j) {
      double v = 0.0;
      if (!(in >> v)) {
        throw KyfanError("INPUT_ERROR",
                         what + ": too few entries for declared dimensions");
      }
      a(i, j) = v;
    }
  }
  std::string trailing;
  if (in >> trailing) {
    throw KyfanError("INPUT_ERROR", what + ": trailing data after matrix");
  }
  if (!a.allFinite()) {
    throw KyfanError("INPUT_ERROR", what + ": non-finite entry");
  }
  return a;
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw KyfanError("INPUT_ERROR", "cannot open file: " + path);
  }
  return read_matrix(in, path);
}

void write_matrix(std::ostream& out, const Matrix& a) {
  out << a.rows() << " " << a.cols() << "\n";
  char buf[64];
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", a(i, j));
      out << (j ? " " : "") << buf;
    }
    out << "\n";
  }
}

void write_matrix_file(const std::string& path, const Matrix& a) {
  std::ofstream out(path);
  if (!out) {
    throw KyfanError("INPUT_ERROR", "cannot open file for writing: " + path);
  }
  write_matrix(out, a);
}

Json matrix_to_json(const Matrix& a) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_to_json(const Vector& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Json indices_to_json(const std::vector<int>& idx0) {
  Json arr = Json::array();
  for (int i : idx0) arr.push_back(i + 1);  // reports use 1-based indices
  return arr;
}

namespace {

void escape_string(const std::string& s, std::string& out) {
  out.push_back('"');
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(static_cast<char>(c));
        }
    }
  }
  out.push_back('"');
}

void dump_rec(const Json& j, int indent, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  const std::string pad_close(static_cast<std::size_t>(indent) * depth, ' ');
  switch (j.type()) {
    case Json::value_t::null:
      out += "null";
      break;
    case Json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case Json::value_t::number_integer:
      out += std::to_string(j.get<long long>());
      break;
    case Json::value_t::number_unsigned:
      out += std::to_string(j.get<unsigned long long>());
      break;
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";  // JSON has no representation for inf/nan
      } else {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out += buf;
      }
      break;
    }
    case Json::value_t::string:
      escape_string(j.get<std::string>(), out);
      break;
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      out += "[\n";
      bool first = true;
      for (const auto& el : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        dump_rec(el, indent, depth + 1, out);
      }
      out += "\n" + pad_close + "]";
      break;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        escape_string(it.key(), out);
        out += ": ";
        dump_rec(it.value(), indent, depth + 1, out);
      }
      out += "\n" + pad_close + "}";
      break;
    }
    default:
      out += "null";
      break;
  }
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::string out;
  dump_rec(j, indent, 0, out);
  out.push_back('\n');
  return out;
}

}  // namespace kyfan
