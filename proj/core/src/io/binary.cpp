// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#include "hjepa/io/binary.hpp"

#include <bit>
#include <fstream>
#include <iterator>

#include "hjepa/error.hpp"

namespace hjepa::io {

template <typename U>
void BinaryWriter::put(U v) {
  for (std::size_t i = 0; i < sizeof(U); ++i)
    buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void BinaryWriter::bytes(std::string_view raw) {
  buf_.insert(buf_.end(), raw.begin(), raw.end());
}
void BinaryWriter::u8(std::uint8_t v) { buf_.push_back(v); }
void BinaryWriter::u16(std::uint16_t v) { put(v); }
void BinaryWriter::u32(std::uint32_t v) { put(v); }
void BinaryWriter::u64(std::uint64_t v) { put(v); }
void BinaryWriter::f32(float v) { put(std::bit_cast<std::uint32_t>(v)); }
void BinaryWriter::f64(double v) { put(std::bit_cast<std::uint64_t>(v)); }

void BinaryWriter::str(std::string_view s) {
  if (s.size() > 0xffff) throw DataError("string too long to encode");
  u16(static_cast<std::uint16_t>(s.size()));
  bytes(s);
}

template <typename U>
U BinaryReader::get() {
  if (remaining() < sizeof(U)) throw DataError("unexpected end of data");
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i)
    v |= static_cast<U>(static_cast<U>(data_[pos_ + i]) << (8 * i));
  pos_ += sizeof(U);
  return v;
}

std::string BinaryReader::bytes(std::size_t n) {
  if (remaining() < n) throw DataError("unexpected end of data");
  std::string s(data_.begin() + static_cast<std::ptrdiff_t>(pos_),
                data_.begin() + static_cast<std::ptrdiff_t>(pos_ + n));
  pos_ += n;
  return s;
}
std::uint8_t BinaryReader::u8() { return get<std::uint8_t>(); }
std::uint16_t BinaryReader::u16() { return get<std::uint16_t>(); }
std::uint32_t BinaryReader::u32() { return get<std::uint32_t>(); }
std::uint64_t BinaryReader::u64() { return get<std::uint64_t>(); }
float BinaryReader::f32() { return std::bit_cast<float>(get<std::uint32_t>()); }
double BinaryReader::f64() { return std::bit_cast<double>(get<std::uint64_t>()); }
std::string BinaryReader::str() { return bytes(u16()); }

void BinaryReader::expect_end(const char* what) const {
  if (remaining() != 0)
    throw DataError(std::string(what) + ": " + std::to_string(remaining()) +
                    " trailing bytes");
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  Bytes data((std::istreambuf_iterator<char>(in)),
             std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  return data;
}

namespace {

void write_raw(const std::filesystem::path& path, const char* data,
               std::size_t size) {
  std::error_code ec;
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path(), ec);
  if (ec)
    throw IoError("cannot create directory '" + path.parent_path().string() +
                  "': " + ec.message());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(data, static_cast<std::streamsize>(size));
    if (!out) throw IoError("failed writing '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename onto '" + path.string() + "': " + ec.message());
}

}  // namespace

void write_file(const std::filesystem::path& path, const Bytes& data) {
  write_raw(path, reinterpret_cast<const char*>(data.data()), data.size());
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  write_raw(path, text.data(), text.size());
}

std::string read_text_file(const std::filesystem::path& path) {
  const Bytes raw = read_file(path);
  return {raw.begin(), raw.end()};
}

}  // namespace hjepa::io
