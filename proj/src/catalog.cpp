#include "pamc/catalog.hpp"

#include <curl/curl.h>
#include <openssl/evp.h>

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <memory>
#include <sstream>

#include "embedded_data.hpp"
#include "pamc/graph.hpp"

namespace pamc {

namespace fs = std::filesystem;

InstanceCatalog::InstanceCatalog(std::vector<InstanceCatalogEntry> entries)
    : entries_(std::move(entries)) {}

InstanceCatalog InstanceCatalog::parse(std::istream& in) {
  std::vector<InstanceCatalogEntry> entries;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    InstanceCatalogEntry e;
    long long n = 0;
    long long m = 0;
    if (!(fields >> e.name)) continue;
    if (!(fields >> e.url >> n >> m >> e.sha256) || n <= 0 || m < 0) {
      throw FetchError("catalog line " + std::to_string(number) +
                       ": expected 'name url nodes edges sha256'");
    }
    e.expected_n = static_cast<std::size_t>(n);
    e.expected_m = static_cast<std::size_t>(m);
    if (e.sha256 == "-") e.sha256.clear();
    entries.push_back(std::move(e));
  }
  return InstanceCatalog(std::move(entries));
}

const InstanceCatalog& InstanceCatalog::builtin() {
  static const InstanceCatalog catalog = [] {
    if (const char* path = std::getenv("PAMC_CATALOG"); path && *path) {
      std::ifstream in(path);
      if (!in) throw FetchError(std::string("cannot open catalog ") + path);
      return parse(in);
    }
    std::istringstream in{std::string(detail::kCatalogText)};
    return parse(in);
  }();
  return catalog;
}

const InstanceCatalogEntry* InstanceCatalog::find(std::string_view name) const {
  for (const auto& e : entries_) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

const InstanceCatalogEntry& InstanceCatalog::at(std::string_view name) const {
  if (const auto* e = find(name)) return *e;
  throw UnknownInstanceError("unknown instance '" + std::string(name) + "'");
}

namespace {

std::size_t write_body(char* data, std::size_t size, std::size_t count, void* user) {
  static_cast<std::string*>(user)->append(data, size * count);
  return size * count;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FetchError("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_atomically(const fs::path& target, std::string_view bytes) {
  fs::create_directories(target.parent_path());
  const fs::path temp = target.string() + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw FetchError("cannot write " + temp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw FetchError("short write to " + temp.string());
  }
  fs::rename(temp, target);
}

fs::path instance_path(const fs::path& cache_dir, std::string_view name) {
  return cache_dir / std::string(name);
}

fs::path pin_path(const fs::path& cache_dir, std::string_view name) {
  return cache_dir / (std::string(name) + ".sha256");
}

std::string pinned_checksum(const InstanceCatalogEntry& entry, const fs::path& cache_dir) {
  if (!entry.sha256.empty()) return entry.sha256;
  const fs::path pin = pin_path(cache_dir, entry.name);
  if (!fs::exists(pin)) return {};
  std::istringstream in(read_file(pin));
  std::string digest;
  in >> digest;
  return digest;
}

// Checks raw instance bytes against the catalog and stores them.
fs::path accept_instance(const InstanceCatalogEntry& entry, const std::string& bytes,
                         const fs::path& cache_dir) {
  const std::string digest = sha256_hex(bytes);
  const std::string expected = pinned_checksum(entry, cache_dir);
  if (!expected.empty() && digest != expected) {
    throw FetchError("checksum mismatch for " + entry.name + ": got " + digest + ", expected " +
                     expected + "; download discarded");
  }
  std::istringstream in(bytes);
  std::pair<std::size_t, std::size_t> header;
  try {
    header = read_gset_header(in);
  } catch (const GraphError& e) {
    throw FetchError("downloaded " + entry.name + " is not a G-set file: " + e.what());
  }
  if (header.first != entry.expected_n || header.second != entry.expected_m) {
    throw FetchError("header mismatch for " + entry.name + ": file declares " +
                     std::to_string(header.first) + " nodes and " + std::to_string(header.second) +
                     " edges, catalog expects " + std::to_string(entry.expected_n) + " and " +
                     std::to_string(entry.expected_m));
  }
  const fs::path target = instance_path(cache_dir, entry.name);
  write_atomically(target, bytes);
  if (expected.empty()) write_atomically(pin_path(cache_dir, entry.name), digest + "\n");
  return target;
}

}  // namespace

CurlDownloader::CurlDownloader(long timeout_seconds) : timeout_seconds_(timeout_seconds) {
  static const bool initialized = [] { return curl_global_init(CURL_GLOBAL_DEFAULT) == CURLE_OK; }();
  if (!initialized) throw FetchError("libcurl initialization failed");
}

std::string CurlDownloader::get(const std::string& url) {
  std::unique_ptr<CURL, decltype(&curl_easy_cleanup)> handle(curl_easy_init(), curl_easy_cleanup);
  if (!handle) throw FetchError("libcurl handle allocation failed");
  std::string body;
  char error[CURL_ERROR_SIZE] = {};
  curl_easy_setopt(handle.get(), CURLOPT_URL, url.c_str());
  curl_easy_setopt(handle.get(), CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(handle.get(), CURLOPT_FAILONERROR, 1L);
  curl_easy_setopt(handle.get(), CURLOPT_TIMEOUT, timeout_seconds_);
  curl_easy_setopt(handle.get(), CURLOPT_WRITEFUNCTION, write_body);
  curl_easy_setopt(handle.get(), CURLOPT_WRITEDATA, &body);
  curl_easy_setopt(handle.get(), CURLOPT_ERRORBUFFER, error);
  const CURLcode rc = curl_easy_perform(handle.get());
  if (rc != CURLE_OK) {
    throw FetchError("download of " + url + " failed: " +
                     (error[0] ? std::string(error) : std::string(curl_easy_strerror(rc))));
  }
  return body;
}

fs::path default_cache_dir() {
  if (const char* dir = std::getenv("PAMC_CACHE_DIR"); dir && *dir) return dir;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "pamc-maxcut";
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "pamc-maxcut";
  return fs::current_path() / ".pamc-cache";
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

std::optional<fs::path> cached_instance(const InstanceCatalog& catalog, std::string_view name,
                                        const fs::path& cache_dir) {
  const auto& entry = catalog.at(name);
  const fs::path path = instance_path(cache_dir, name);
  if (!fs::exists(path)) return std::nullopt;
  const std::string expected = pinned_checksum(entry, cache_dir);
  if (!expected.empty() && sha256_hex(read_file(path)) != expected) {
    fs::remove(path);
    throw FetchError("cached " + entry.name + " does not match its checksum and was removed");
  }
  return path;
}

fs::path fetch_instance(const InstanceCatalog& catalog, std::string_view name,
                        const fs::path& cache_dir, Downloader& downloader) {
  const auto& entry = catalog.at(name);
  if (auto hit = cached_instance(catalog, name, cache_dir)) return *hit;
  return accept_instance(entry, downloader.get(entry.url), cache_dir);
}

fs::path import_instance(const InstanceCatalog& catalog, std::string_view name,
                         const fs::path& source, const fs::path& cache_dir) {
  return accept_instance(catalog.at(name), read_file(source), cache_dir);
}

}  // namespace pamc
