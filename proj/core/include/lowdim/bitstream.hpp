#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace lowdim {

/// Growable bit sequence. Bit i lives in byte i / 8 at position 7 - i % 8,
/// so serialized bytes read in big-endian bit order; the final byte is
/// zero-padded.
class Bitstring {
 public:
  Bitstring() = default;
  static Bitstring from_bytes(std::vector<std::uint8_t> bytes, std::size_t bit_count);

  std::size_t size() const noexcept { return size_; }
  const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }

  bool operator[](std::size_t i) const noexcept { return (bytes_[i >> 3] >> (7 - (i & 7))) & 1U; }

  void push_back(bool bit);
  /// Appends the low `width` bits of `value`, most significant first.
  void append(std::uint64_t value, unsigned width);
  void append(const Bitstring& other);

  /// '0'/'1' rendering, mostly for diagnostics and hashing.
  std::string to_string() const;

  friend bool operator==(const Bitstring&, const Bitstring&) = default;

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t size_ = 0;
};

/// Sequential reader; any read past the end throws MalformedBits.
class BitReader {
 public:
  explicit BitReader(const Bitstring& bits) noexcept : bits_(&bits) {}

  bool read_bit();
  std::uint64_t read(unsigned width);

  std::size_t position() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return bits_->size() - pos_; }

 private:
  const Bitstring* bits_;
  std::size_t pos_ = 0;
};

}  // namespace lowdim
