#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ccmm/compression.hpp"
#include "ccmm/matrix.hpp"
#include "ccmm/rational.hpp"

namespace ccmm::harness {

/// One M grid point of the analytic curves.
struct CurveRow {
  Rational M;
  Rational R_sa;
  Rational R1;
  Rational R2;
  Rational R_row;
  int ell_row = 1;
  Rational R_col;
  Rational cutset;
  std::optional<Rational> genie;
  std::optional<Rational> simulated;
  bool operator==(const CurveRow&) const = default;
};

/// Rows for M = j N / grid, j = 0..grid.
std::vector<CurveRow> analyze_curves(int K, int N, const Rational& a, int grid);

std::string curves_to_csv(const std::vector<CurveRow>& rows);
std::vector<CurveRow> parse_curves_csv(const std::string& text);

/// Line plot with one polyline per curve column, axes and legend. No external assets.
std::string curves_to_svg(const std::vector<CurveRow>& rows, const std::string& title);

/// Writes to a sibling temporary file and renames it over `path`, so readers never see a partial file.
void write_file_atomic(const std::string& path, const std::string& content);

std::string csv_escape(const std::string& field);

// Packet wire format, little-endian: u32 rank, u32 basis index * rank, u64 symbol * count.
std::vector<std::uint8_t> encode_packet(const PacketHeader& header, const std::vector<Symbol>& symbols);
/// Throws std::invalid_argument on truncated input.
std::pair<PacketHeader, std::vector<Symbol>> decode_packet(const std::vector<std::uint8_t>& bytes);

// Matrix serialization. Text: "rows cols q" then one line per row of decimal residues.
// Binary: u64 rows, u64 cols, u64 q, then row-major u64 entries, all little-endian.
std::string matrix_to_text(const FieldMatrix& m);
FieldMatrix matrix_from_text(const std::string& text);
std::vector<std::uint8_t> matrix_to_binary(const FieldMatrix& m);
FieldMatrix matrix_from_binary(const std::vector<std::uint8_t>& bytes);

}  // namespace ccmm::harness
