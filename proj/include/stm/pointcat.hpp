#pragma once

#include <map>
#include <string>
#include <utility>

namespace stm {

// Direct sum of Q(p)[q]^{dim}, keyed by (q, p): q homological shift, p Tate twist.
class BigradedVS {
 public:
  using Key = std::pair<int, int>;

  BigradedVS() = default;
  static BigradedVS unit(int q = 0, int p = 0, long long dim = 1);

  [[nodiscard]] long long dim(int q, int p) const;
  [[nodiscard]] const std::map<Key, long long>& dims() const { return dims_; }
  [[nodiscard]] long long total_dim() const;
  [[nodiscard]] bool is_zero() const { return dims_.empty(); }
  void add(int q, int p, long long d);

  BigradedVS& operator+=(const BigradedVS& o);
  friend BigradedVS operator+(BigradedVS a, const BigradedVS& b) { return a += b; }
  friend bool operator==(const BigradedVS&, const BigradedVS&) = default;

  // JSON list of [q, p, dim], sorted.
  [[nodiscard]] std::string serialize() const;
  static BigradedVS parse(const std::string& json);

 private:
  std::map<Key, long long> dims_;
};

int weight(int q, int p);

// Entry (n, m) is dim Hom(a, b[n](m)); the (0, 0) entry is the plain Hom.
BigradedVS hom_dims(const BigradedVS& a, const BigradedVS& b);
BigradedVS tensor(const BigradedVS& a, const BigradedVS& b);
BigradedVS twist(const BigradedVS& a, int n);
BigradedVS shift(const BigradedVS& a, int n);
BigradedVS motive_of_P1();

enum class Bound { AtMost, AtLeast };
BigradedVS weight_truncate(const BigradedVS& a, Bound b, int n);

enum class LevineCut { W, Above, Graded };  // W_n, W^{>n}, gr^W_n
BigradedVS w_levine_truncate(const BigradedVS& a, LevineCut cut, int n);

// (q, p) -> (q - 2p, -p)
BigradedVS koszul_point(const BigradedVS& a);

// Forgets the twist: q -> sum_p dims(q, p).
std::map<int, long long> degrade(const BigradedVS& a);

}  // namespace stm
