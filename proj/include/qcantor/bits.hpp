#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "qcantor/errors.hpp"

namespace qcantor {

// Bit strings are written a_0 a_1 ... a_{n-1} with qubit 0 first; the matrix
// index of a string is sum_j a_j * 2^j (most significant digit on the right).

inline Eigen::Index string_to_index(const std::string& sigma) {
  Eigen::Index idx = 0;
  for (std::size_t j = 0; j < sigma.size(); ++j) {
    if (sigma[j] == '1')
      idx |= Eigen::Index(1) << j;
    else if (sigma[j] != '0')
      throw InvalidArgumentError("bit string contains a character other than 0/1: " + sigma);
  }
  return idx;
}

inline std::string index_to_string(Eigen::Index idx, int length) {
  std::string s(static_cast<std::size_t>(length), '0');
  for (int j = 0; j < length; ++j)
    if ((idx >> j) & 1) s[static_cast<std::size_t>(j)] = '1';
  return s;
}

inline std::vector<std::string> all_strings(int length) {
  std::vector<std::string> out;
  out.reserve(std::size_t(1) << length);
  for (Eigen::Index i = 0; i < (Eigen::Index(1) << length); ++i) out.push_back(index_to_string(i, length));
  return out;
}

inline bool bit_of_index(Eigen::Index idx, int j) { return ((idx >> j) & 1) != 0; }

} // namespace qcantor
