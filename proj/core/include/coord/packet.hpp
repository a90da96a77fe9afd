#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>

#include "coord/events.hpp"

namespace coord {

// Fixed 128-byte wire frame, little endian throughout:
//
//   offset  size  field
//   0       2     magic 0xE1BD
//   2       1     protocol version (1)
//   3       1     sender id
//   4       1     event kind
//   5       1     flags (bit0 obstacle list truncated, bit1 saturated)
//   6       4     timestamp, milliseconds
//   10      6     self pose x, y (cm) and heading (mrad), signed 16 bit
//   16      8     ball x, y (cm) and vx, vy (cm/s), signed 16 bit
//   24      1     ball confidence (0..255)
//   25      1     obstacle count k (<= 9)
//   26      10*k  obstacle records: x, y (cm), axis (mrad), interest
//                 length (cm, unsigned), confidence (0..255), track id
//   ...     0     zero padding up to offset 124
//   124     4     CRC-32 (IEEE) over bytes [0, 124)
//
// Quantization: 0.5 cm position, 0.5 mrad angle, 0.5 cm/s velocity and
// 1/255 confidence worst-case error; out-of-range values saturate and set
// the flag bit.
inline constexpr std::size_t kPacketSize = 128;
inline constexpr std::uint16_t kPacketMagic = 0xE1BD;
inline constexpr std::uint8_t kProtocolVersion = 1;

struct Packet {
    std::array<std::uint8_t, kPacketSize> raw{};
};

enum class DecodeFailure {
    None,
    BadLength,
    BadMagic,
    BadVersion,
    BadCrc,
    BadField,
};

const char* to_string(DecodeFailure failure);

std::uint32_t crc32(std::span<const std::uint8_t> data);

// Serializes an event; always produces exactly 128 bytes. Obstacle lists
// longer than the layout capacity are cut to the highest-confidence
// entries with the truncation flag set.
Packet encode_packet(const Event& event);

// Inverse of encode_packet up to quantization. Returns nullopt (and the
// reason, if requested) for wrong length, magic, version, CRC or field
// ranges; such packets count as losses upstream.
std::optional<Event> decode_packet(std::span<const std::uint8_t> raw,
                                   DecodeFailure* failure = nullptr);

}  // namespace coord
