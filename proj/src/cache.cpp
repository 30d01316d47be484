#include "stm/cache.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "json.hpp"

namespace stm {

namespace fs = std::filesystem;

namespace {

std::string to_hex(const std::string& bytes) {
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * bytes.size());
  for (unsigned char c : bytes) {
    out.push_back(hex[c >> 4]);
    out.push_back(hex[c & 15]);
  }
  return out;
}

std::string from_hex(const std::string& text) {
  if (text.size() % 2) throw std::runtime_error("odd hex length");
  std::string out;
  out.reserve(text.size() / 2);
  for (std::size_t i = 0; i < text.size(); i += 2)
    out.push_back(static_cast<char>(std::stoi(text.substr(i, 2), nullptr, 16)));
  return out;
}

// Text values are stored verbatim; anything that is not UTF-8 goes in as hex.
nlohmann::json encode_value(const std::string& value) {
  nlohmann::json v = value;
  try {
    (void)v.dump();
    return {{"encoding", "utf8"}, {"value", value}};
  } catch (const nlohmann::json::type_error&) {
    return {{"encoding", "hex"}, {"value", to_hex(value)}};
  }
}

}  // namespace

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  return to_hex(std::string(reinterpret_cast<const char*>(digest), len));
}

std::string cache_key(int schema_version, const std::string& type, int rank, const std::string& operation,
                      const std::string& args) {
  const nlohmann::json j = {schema_version, type, rank, operation, args};
  return sha256_hex(j.dump());
}

Cache::Cache(fs::path root) : root_(std::move(root)) {}

std::optional<fs::path> Cache::from_environment() {
  const char* env = std::getenv("STM_CACHE_DIR");
  if (env == nullptr || *env == '\0') return std::nullopt;
  return fs::path(env);
}

fs::path Cache::entry_path(const std::string& key) const {
  if (key.size() < 4) throw std::invalid_argument("cache key too short");
  return root_ / key.substr(0, 2) / key.substr(2, 2) / (key + ".json");
}

std::optional<std::string> Cache::get(const std::string& key) const {
  const fs::path p = entry_path(key);
  std::error_code ec;
  if (!fs::exists(p, ec)) return std::nullopt;
  std::ifstream in(p, std::ios::binary);
  if (!in) {
    std::cerr << "warning: cache entry " << p.string() << " unreadable, treating as miss\n";
    return std::nullopt;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    const auto j = nlohmann::json::parse(buf.str());
    const std::string stored = j.at("value").get<std::string>();
    const std::string value = j.at("encoding").get<std::string>() == "hex" ? from_hex(stored) : stored;
    if (j.at("key").get<std::string>() != key || j.at("sha256").get<std::string>() != sha256_hex(value))
      throw std::runtime_error("checksum mismatch");
    return value;
  } catch (const std::exception& e) {
    std::cerr << "warning: cache entry " << p.string() << " corrupt (" << e.what() << "), treating as miss\n";
    return std::nullopt;
  }
}

bool Cache::put(const std::string& key, const std::string& value) const {
  static std::atomic<unsigned long> counter{0};
  const fs::path p = entry_path(key);
  std::error_code ec;
  fs::create_directories(p.parent_path(), ec);
  if (ec) {
    std::cerr << "warning: cannot create " << p.parent_path().string() << ": " << ec.message() << '\n';
    return false;
  }
  nlohmann::json j = encode_value(value);
  j["key"] = key;
  j["schema"] = kSchemaVersion;
  j["sha256"] = sha256_hex(value);
  const fs::path tmp =
      p.parent_path() / (key + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << j.dump();
    if (!out) {
      std::cerr << "warning: cannot write " << tmp.string() << '\n';
      fs::remove(tmp, ec);
      return false;
    }
  }
  fs::rename(tmp, p, ec);
  if (ec) {
    std::cerr << "warning: cannot rename into " << p.string() << ": " << ec.message() << '\n';
    fs::remove(tmp, ec);
    return false;
  }
  return true;
}

}  // namespace stm
