#pragma once

#include <filesystem>
#include <optional>
#include <string>

namespace stm {

inline constexpr int kSchemaVersion = 1;

std::string sha256_hex(const std::string& data);

// Hex digest of (schema_version, type, rank, operation, canonical arguments).
std::string cache_key(int schema_version, const std::string& type, int rank, const std::string& operation,
                      const std::string& args);

// One JSON file per entry under root/ab/cd/<key>.json.
class Cache {
 public:
  explicit Cache(std::filesystem::path root);
  // STM_CACHE_DIR, when set and nonempty.
  static std::optional<std::filesystem::path> from_environment();

  [[nodiscard]] const std::filesystem::path& root() const { return root_; }
  [[nodiscard]] std::filesystem::path entry_path(const std::string& key) const;

  // Missing, unreadable or corrupt entries are misses; the latter two warn on stderr.
  [[nodiscard]] std::optional<std::string> get(const std::string& key) const;
  // Writes a temp file next to the entry and renames it into place. Returns false on I/O failure.
  bool put(const std::string& key, const std::string& value) const;

 private:
  std::filesystem::path root_;
};

}  // namespace stm
