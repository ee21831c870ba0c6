#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ekrlab/field.hpp"
#include "ekrlab/geometry.hpp"
#include "ekrlab/matrix.hpp"

namespace ekrlab {

// Text forms used by the command line and the reports:
//   field     GF(5) | GF(3^2;1,0,1)      (modulus coefficients low-to-high)
//   vector    [1,4]
//   matrix    [[2,1],[0,1]]              (row major; 3x3 analogous)
//   line      <[1,4]>                    (line through the origin)
//   affine    [0,1]+<[1,0]>              (offset + direction)
//   list      [[..]];[[..]];...          (';'-separated matrices)
// Whitespace is ignored everywhere. Entries are element indices in 0..q-1.

std::string format_field(const Field& F);
Field parse_field(const std::string& s);

std::string format_vec(const Field& F, const Vec& v);
Vec parse_vec(const Field& F, const std::string& s, int n = 2);

std::string format_mat(const Field& F, const Mat& m);
Mat parse_mat(const Field& F, const std::string& s, int n = 2);

std::string format_proj_line(const Field& F, const ProjLine& l);
std::string format_aff_line(const Field& F, const AffLine& l);

std::vector<Mat> parse_mat_list(const Field& F, const std::string& s, int n = 2);

// One matrix per line; blank lines and lines starting with '#' are skipped.
// ParseError messages carry the 1-based line number.
std::vector<Mat> parse_mat_stream(const Field& F, std::istream& in, int n = 2);

}  // namespace ekrlab
