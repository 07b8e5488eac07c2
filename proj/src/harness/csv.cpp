#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ccmm/analysis.hpp"
#include "ccmm/harness/io.hpp"

namespace ccmm::harness {
namespace {

constexpr const char* kHeader = "M,M_float,R_sa,R1,R2,R_row,ell_row,R_col,cutset,genie,simulated";

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void put_le(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_le(const std::vector<std::uint8_t>& in, std::size_t& pos, int bytes) {
  if (pos + static_cast<std::size_t>(bytes) > in.size()) throw std::invalid_argument("truncated input");
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(in[pos + static_cast<std::size_t>(i)]) << (8 * i);
  pos += static_cast<std::size_t>(bytes);
  return v;
}

}  // namespace

std::vector<CurveRow> analyze_curves(int K, int N, const Rational& a, int grid) {
  if (grid < 1) throw std::invalid_argument("grid size must be at least 1");
  std::vector<CurveRow> rows;
  for (int j = 0; j <= grid; ++j) {
    CurveRow row;
    row.M = Rational(j) * Rational(N) / Rational(grid);
    row.R_sa = analysis::load_sa(K, N, a, row.M);
    row.R1 = analysis::load_R1(K, N, a, row.M);
    row.R2 = analysis::load_R2(K, N, a, row.M);
    const analysis::RowLoad rl = analysis::load_Rrow(K, N, a, row.M);
    row.R_row = rl.value;
    row.ell_row = rl.ell;
    row.R_col = analysis::load_Rcol(K, N, a, row.M);
    row.cutset = analysis::cutset_bound(K, N, a, row.M);
    row.genie = analysis::genie_bound(K, N, a, row.M);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string curves_to_csv(const std::vector<CurveRow>& rows) {
  std::string out = std::string(kHeader) + "\n";
  for (const CurveRow& r : rows) {
    out += to_string(r.M) + "," + format_double(to_double(r.M)) + "," + to_string(r.R_sa) + "," + to_string(r.R1) +
           "," + to_string(r.R2) + "," + to_string(r.R_row) + "," + std::to_string(r.ell_row) + "," +
           to_string(r.R_col) + "," + to_string(r.cutset) + "," + (r.genie ? to_string(*r.genie) : "") + "," +
           (r.simulated ? to_string(*r.simulated) : "") + "\n";
  }
  return out;
}

std::vector<CurveRow> parse_curves_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || split_csv_line(line) != split_csv_line(kHeader)) {
    throw std::invalid_argument("unexpected curve CSV header");
  }
  std::vector<CurveRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 11) throw std::invalid_argument("curve CSV row has " + std::to_string(f.size()) + " fields");
    CurveRow r;
    r.M = parse_rational(f[0]);
    r.R_sa = parse_rational(f[2]);
    r.R1 = parse_rational(f[3]);
    r.R2 = parse_rational(f[4]);
    r.R_row = parse_rational(f[5]);
    r.ell_row = std::stoi(f[6]);
    r.R_col = parse_rational(f[7]);
    r.cutset = parse_rational(f[8]);
    if (!f[9].empty()) r.genie = parse_rational(f[9]);
    if (!f[10].empty()) r.simulated = parse_rational(f[10]);
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      fs::remove(tmp);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::uint8_t> encode_packet(const PacketHeader& header, const std::vector<Symbol>& symbols) {
  std::vector<std::uint8_t> out;
  put_le(out, header.rank, 4);
  for (auto b : header.basis_rows) put_le(out, b, 4);
  for (Symbol s : symbols) put_le(out, s, 8);
  return out;
}

std::pair<PacketHeader, std::vector<Symbol>> decode_packet(const std::vector<std::uint8_t>& bytes) {
  std::size_t pos = 0;
  PacketHeader h;
  h.rank = static_cast<std::uint32_t>(get_le(bytes, pos, 4));
  for (std::uint32_t i = 0; i < h.rank; ++i) h.basis_rows.push_back(static_cast<std::uint32_t>(get_le(bytes, pos, 4)));
  if ((bytes.size() - pos) % 8 != 0) throw std::invalid_argument("truncated input");
  std::vector<Symbol> symbols;
  while (pos < bytes.size()) symbols.push_back(get_le(bytes, pos, 8));
  return {h, symbols};
}

std::string matrix_to_text(const FieldMatrix& m) {
  std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + " " + std::to_string(m.field().modulus()) + "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ' ';
      out += std::to_string(m(i, j));
    }
    out += '\n';
  }
  return out;
}

FieldMatrix matrix_from_text(const std::string& text) {
  std::istringstream in(text);
  std::size_t rows = 0, cols = 0;
  std::uint64_t q = 0;
  if (!(in >> rows >> cols >> q)) throw std::invalid_argument("malformed matrix header");
  std::vector<Symbol> entries(rows * cols);
  for (auto& e : entries) {
    if (!(in >> e)) throw std::invalid_argument("truncated matrix text");
  }
  return FieldMatrix(FieldSpec(q), rows, cols, std::move(entries));
}

std::vector<std::uint8_t> matrix_to_binary(const FieldMatrix& m) {
  std::vector<std::uint8_t> out;
  put_le(out, m.rows(), 8);
  put_le(out, m.cols(), 8);
  put_le(out, m.field().modulus(), 8);
  for (Symbol s : m.entries()) put_le(out, s, 8);
  return out;
}

FieldMatrix matrix_from_binary(const std::vector<std::uint8_t>& bytes) {
  std::size_t pos = 0;
  const std::uint64_t rows = get_le(bytes, pos, 8);
  const std::uint64_t cols = get_le(bytes, pos, 8);
  const std::uint64_t q = get_le(bytes, pos, 8);
  if ((bytes.size() - pos) / 8 != rows * cols || (bytes.size() - pos) % 8 != 0) {
    throw std::invalid_argument("matrix byte length does not match its header");
  }
  std::vector<Symbol> entries(rows * cols);
  for (auto& e : entries) e = get_le(bytes, pos, 8);
  return FieldMatrix(FieldSpec(q), rows, cols, std::move(entries));
}

}  // namespace ccmm::harness
