// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#include "hjepa/cli/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <memory>
#include <sstream>

#include "hjepa/error.hpp"
#include "hjepa/format.hpp"
#include "hjepa/io/binary.hpp"

#ifndef HJEPA_VERSION
#define HJEPA_VERSION "unknown"
#endif
#ifndef HJEPA_GIT_DESCRIBE
#define HJEPA_GIT_DESCRIBE "unknown"
#endif

namespace hjepa::cli {

std::string sha256_hex(const std::string& bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                             &EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1)
    throw IoError("SHA-256 computation failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path) {
  const io::Bytes raw = io::read_file(path);
  return sha256_hex(std::string(raw.begin(), raw.end()));
}

void RunManifest::add_artifact(const std::filesystem::path& root,
                               const std::filesystem::path& path) {
  artifacts.emplace_back(std::filesystem::relative(path, root).generic_string(),
                         sha256_file(path));
}

std::string RunManifest::render() const {
  std::ostringstream out;
  out << "[run]\n"
      << "command = " << command << "\n"
      << "version = " << version << "\n";
  out << "[artifacts]\n";
  for (const auto& [path, hash] : artifacts) out << hash << "  " << path << "\n";
  out << "[notes]\n";
  for (const auto& [k, v] : notes) out << k << " = " << v << "\n";
  out << "[timings_s]\n";
  for (const auto& [k, v] : timings_s) out << k << " = " << format_real(v) << "\n";
  out << "[config]\n" << config;
  return out.str();
}

std::vector<std::pair<std::string, std::string>> manifest_artifacts(
    const std::string& text) {
  std::istringstream in(text);
  std::string line;
  bool inside = false;
  std::vector<std::pair<std::string, std::string>> out;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '[') {
      inside = line == "[artifacts]";
      continue;
    }
    if (!inside || line.empty()) continue;
    const auto sep = line.find("  ");
    if (sep == std::string::npos) throw DataError("malformed manifest artifact line");
    out.emplace_back(line.substr(sep + 2), line.substr(0, sep));
  }
  return out;
}

std::string version_string() {
  return std::string(HJEPA_VERSION) + " (" + HJEPA_GIT_DESCRIBE + ")";
}

}  // namespace hjepa::cli
