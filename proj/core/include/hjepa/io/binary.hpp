// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hjepa::io {

using Bytes = std::vector<std::uint8_t>;

// Little-endian encoder into an in-memory buffer.
class BinaryWriter {
 public:
  void bytes(std::string_view raw);
  void u8(std::uint8_t v);
  void u16(std::uint16_t v);
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void f32(float v);
  void f64(double v);
  // u16 length prefix followed by the raw characters.
  void str(std::string_view s);

  const Bytes& buffer() const { return buf_; }
  Bytes take() { return std::move(buf_); }

 private:
  template <typename U>
  void put(U v);
  Bytes buf_;
};

// Bounds-checked little-endian decoder; throws DataError on truncation.
class BinaryReader {
 public:
  explicit BinaryReader(const Bytes& data) : data_(data) {}

  std::string bytes(std::size_t n);
  std::uint8_t u8();
  std::uint16_t u16();
  std::uint32_t u32();
  std::uint64_t u64();
  float f32();
  double f64();
  std::string str();

  std::size_t remaining() const { return data_.size() - pos_; }
  // Throws DataError unless the whole buffer was consumed.
  void expect_end(const char* what) const;

 private:
  template <typename U>
  U get();
  const Bytes& data_;
  std::size_t pos_ = 0;
};

// Whole-file helpers; throw IoError on failure. Writes go through a
// temporary file and a rename so readers never see partial content.
Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const Bytes& data);
void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace hjepa::io
