#include "stm/pointcat.hpp"

#include <stdexcept>

#include "json.hpp"

namespace stm {

BigradedVS BigradedVS::unit(int q, int p, long long dim) {
  BigradedVS v;
  v.add(q, p, dim);
  return v;
}

long long BigradedVS::dim(int q, int p) const {
  auto it = dims_.find({q, p});
  return it == dims_.end() ? 0 : it->second;
}

long long BigradedVS::total_dim() const {
  long long s = 0;
  for (const auto& [k, d] : dims_) s += d;
  return s;
}

void BigradedVS::add(int q, int p, long long d) {
  if (d == 0) return;
  long long& slot = dims_[{q, p}];
  slot += d;
  if (slot < 0) throw std::invalid_argument("BigradedVS: negative dimension");
  if (slot == 0) dims_.erase({q, p});
}

BigradedVS& BigradedVS::operator+=(const BigradedVS& o) {
  for (const auto& [k, d] : o.dims_) add(k.first, k.second, d);
  return *this;
}

std::string BigradedVS::serialize() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& [k, d] : dims_) j.push_back({k.first, k.second, d});
  return j.dump();
}

BigradedVS BigradedVS::parse(const std::string& text) {
  BigradedVS v;
  for (const auto& t : nlohmann::json::parse(text)) v.add(t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<long long>());
  return v;
}

int weight(int q, int p) { return q - 2 * p; }

BigradedVS hom_dims(const BigradedVS& a, const BigradedVS& b) {
  // Hom(Q(p)[q], Q(p')[q']) is Q exactly when the indices agree.
  BigradedVS out;
  for (const auto& [ka, da] : a.dims())
    for (const auto& [kb, db] : b.dims()) out.add(ka.first - kb.first, ka.second - kb.second, da * db);
  return out;
}

BigradedVS tensor(const BigradedVS& a, const BigradedVS& b) {
  BigradedVS out;
  for (const auto& [ka, da] : a.dims())
    for (const auto& [kb, db] : b.dims()) out.add(ka.first + kb.first, ka.second + kb.second, da * db);
  return out;
}

BigradedVS twist(const BigradedVS& a, int n) {
  BigradedVS out;
  for (const auto& [k, d] : a.dims()) out.add(k.first, k.second + n, d);
  return out;
}

BigradedVS shift(const BigradedVS& a, int n) {
  BigradedVS out;
  for (const auto& [k, d] : a.dims()) out.add(k.first + n, k.second, d);
  return out;
}

BigradedVS motive_of_P1() { return BigradedVS::unit(0, 0) + BigradedVS::unit(2, 1); }

BigradedVS weight_truncate(const BigradedVS& a, Bound b, int n) {
  BigradedVS out;
  for (const auto& [k, d] : a.dims()) {
    int w = weight(k.first, k.second);
    if (b == Bound::AtMost ? w <= n : w >= n) out.add(k.first, k.second, d);
  }
  return out;
}

BigradedVS w_levine_truncate(const BigradedVS& a, LevineCut cut, int n) {
  BigradedVS out;
  for (const auto& [k, d] : a.dims()) {
    int level = -k.second;
    bool keep = cut == LevineCut::W ? level <= n : cut == LevineCut::Above ? level > n : level == n;
    if (keep) out.add(k.first, k.second, d);
  }
  return out;
}

BigradedVS koszul_point(const BigradedVS& a) {
  BigradedVS out;
  for (const auto& [k, d] : a.dims()) out.add(k.first - 2 * k.second, -k.second, d);
  return out;
}

std::map<int, long long> degrade(const BigradedVS& a) {
  std::map<int, long long> out;
  for (const auto& [k, d] : a.dims()) out[k.first] += d;
  return out;
}

}  // namespace stm
