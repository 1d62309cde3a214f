#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tml/field.hpp"

namespace tml {

/// Default enumeration budget (elementary steps) for brute-force walks over
/// subgroups and character groups.
inline constexpr std::uint64_t kDefaultEnumerationCap = 100'000'000ULL;

/// Integer matrix A (r rows, k columns) cutting out the subgroup
/// H_A(F_q) = { x in (F_q^x)^k : prod_j x_j^{a_ij} = 1 for every row i }.
class TorusMatrix {
 public:
  /// Throws Error{ParseError} when rows are empty or ragged.
  explicit TorusMatrix(std::vector<std::vector<std::int64_t>> rows);
  TorusMatrix(std::initializer_list<std::vector<std::int64_t>> rows)
      : TorusMatrix(std::vector<std::vector<std::int64_t>>(rows)) {}

  /// "a,b;c,d" -> rows separated by ';', entries by ','.
  static TorusMatrix parse(std::string_view text);

  std::size_t rows() const noexcept { return entries_.size(); }
  std::size_t cols() const noexcept { return entries_.front().size(); }
  std::int64_t at(std::size_t i, std::size_t j) const { return entries_[i][j]; }
  const std::vector<std::vector<std::int64_t>>& entries() const noexcept { return entries_; }

  /// Rank over Q.
  std::size_t rank() const noexcept { return rank_; }
  /// Non-negative entries and a positive entry in every column.
  bool affine_type() const noexcept { return affine_; }
  /// Z^k / (row span) is torsion-free.
  bool connected_type() const noexcept { return connected_; }
  /// Non-zero diagonal entries of the Smith normal form, ascending by divisibility.
  const std::vector<std::int64_t>& invariant_factors() const noexcept { return invariants_; }

  std::string to_string() const;

 private:
  std::vector<std::vector<std::int64_t>> entries_;
  std::size_t rank_ = 0;
  bool affine_ = false;
  bool connected_ = false;
  std::vector<std::int64_t> invariants_;
};

/// Rank over Q by fraction-free elimination.
std::size_t integer_rank(const std::vector<std::vector<std::int64_t>>& m);

/// Invariant factors (non-zero diagonal of the Smith normal form).
std::vector<std::int64_t> smith_invariants(std::vector<std::vector<std::int64_t>> m);

/// Calls visit(e) for every exponent vector e in (Z/(q-1))^k with
/// sum_j a_ij e_j = 0 (mod q-1) for all i, i.e. for every point
/// (g^{e_1}, ..., g^{e_k}) of H_A(F_q). Throws Error{TooLarge} if the walk
/// would exceed cap steps.
void for_each_subgroup_exponent(const FieldCtx& ctx, const TorusMatrix& a, std::uint64_t cap,
                                const std::function<void(std::span<const std::uint64_t>)>& visit);

/// All points of H_A(F_q) as k-tuples of residues.
std::vector<std::vector<std::uint64_t>> subgroup_points(const FieldCtx& ctx, const TorusMatrix& a,
                                                        std::uint64_t cap = kDefaultEnumerationCap);

/// |H_A(F_q)|, from the Smith invariants: (q-1)^{k-r} * prod gcd(d_i, q-1).
std::uint64_t subgroup_order(const FieldCtx& ctx, const TorusMatrix& a);

}  // namespace tml
