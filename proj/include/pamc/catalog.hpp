#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pamc {

class FetchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownInstanceError : public FetchError {
 public:
  using FetchError::FetchError;
};

struct InstanceCatalogEntry {
  std::string name;
  std::string url;
  std::size_t expected_n = 0;
  std::size_t expected_m = 0;
  // Lowercase hex SHA-256 of the raw file; empty until pinned.
  std::string sha256;
};

class InstanceCatalog {
 public:
  InstanceCatalog() = default;
  explicit InstanceCatalog(std::vector<InstanceCatalogEntry> entries);

  /// Whitespace-separated "name url nodes edges sha256" rows; '#' starts a
  /// comment and a sha256 of "-" means not yet pinned.
  static InstanceCatalog parse(std::istream& in);

  /// The catalog shipped with the library, or the file named by
  /// $PAMC_CATALOG when that variable is set.
  static const InstanceCatalog& builtin();

  const InstanceCatalogEntry* find(std::string_view name) const;
  /// Throws UnknownInstanceError.
  const InstanceCatalogEntry& at(std::string_view name) const;
  const std::vector<InstanceCatalogEntry>& entries() const { return entries_; }

 private:
  std::vector<InstanceCatalogEntry> entries_;
};

/// Transport used by fetch_instance; swapped out in tests.
class Downloader {
 public:
  virtual ~Downloader() = default;
  /// Body of a successful GET. Throws FetchError on any failure.
  virtual std::string get(const std::string& url) = 0;
};

class CurlDownloader final : public Downloader {
 public:
  explicit CurlDownloader(long timeout_seconds = 120);
  std::string get(const std::string& url) override;

 private:
  long timeout_seconds_;
};

/// $PAMC_CACHE_DIR, else $XDG_CACHE_HOME/pamc-maxcut, else
/// ~/.cache/pamc-maxcut.
std::filesystem::path default_cache_dir();

std::string sha256_hex(std::string_view data);

/// Path of the cached instance file, downloading it on a miss.
///
/// Downloads are checked against the catalog's node/edge counts and, once
/// known, its checksum before being moved into place; a file that fails is
/// discarded. Unpinned checksums are pinned into `<name>.sha256` next to the
/// instance. A cache hit whose file no longer matches its pinned checksum is
/// removed and reported as an error.
std::filesystem::path fetch_instance(const InstanceCatalog& catalog, std::string_view name,
                                     const std::filesystem::path& cache_dir, Downloader& downloader);

/// Copies a local file into the cache under `name` after the same checks a
/// download gets.
std::filesystem::path import_instance(const InstanceCatalog& catalog, std::string_view name,
                                      const std::filesystem::path& source,
                                      const std::filesystem::path& cache_dir);

/// Cached path if present and intact; never touches the network.
std::optional<std::filesystem::path> cached_instance(const InstanceCatalog& catalog,
                                                     std::string_view name,
                                                     const std::filesystem::path& cache_dir);

}  // namespace pamc
