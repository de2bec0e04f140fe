#include "lowdim/bitstream.hpp"

#include "lowdim/error.hpp"

namespace lowdim {

Bitstring Bitstring::from_bytes(std::vector<std::uint8_t> bytes, std::size_t bit_count) {
  if (bit_count > bytes.size() * 8 || bytes.size() > (bit_count + 7) / 8) {
    throw Error(ErrorKind::MalformedBits, "bit count does not match byte count");
  }
  Bitstring out;
  out.bytes_ = std::move(bytes);
  out.size_ = bit_count;
  if (bit_count & 7U) out.bytes_.back() &= static_cast<std::uint8_t>(0xFFU << (8 - (bit_count & 7U)));
  return out;
}

void Bitstring::push_back(bool bit) {
  if ((size_ & 7U) == 0) bytes_.push_back(0);
  if (bit) bytes_.back() |= static_cast<std::uint8_t>(1U << (7 - (size_ & 7U)));
  ++size_;
}

void Bitstring::append(std::uint64_t value, unsigned width) {
  for (unsigned i = width; i-- > 0;) push_back((value >> i) & 1U);
}

void Bitstring::append(const Bitstring& other) {
  for (std::size_t i = 0; i < other.size(); ++i) push_back(other[i]);
}

std::string Bitstring::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) s[i] = (*this)[i] ? '1' : '0';
  return s;
}

bool BitReader::read_bit() {
  if (pos_ >= bits_->size()) throw Error(ErrorKind::MalformedBits, "read past end of bitstring");
  return (*bits_)[pos_++];
}

std::uint64_t BitReader::read(unsigned width) {
  if (width > 64) throw Error(ErrorKind::MalformedBits, "field wider than 64 bits");
  if (remaining() < width) throw Error(ErrorKind::MalformedBits, "read past end of bitstring");
  std::uint64_t v = 0;
  for (unsigned i = 0; i < width; ++i) v = (v << 1) | static_cast<std::uint64_t>((*bits_)[pos_++]);
  return v;
}

}  // namespace lowdim
