#include "coord/packet.hpp"

#include <algorithm>
#include <cmath>

namespace coord {

namespace {

constexpr std::size_t kHeaderSize = 26;
constexpr std::size_t kObstacleRecordSize = 10;
constexpr std::size_t kCrcOffset = kPacketSize - 4;

struct Cursor {
    std::uint8_t* data;
    std::size_t offset = 0;

    void u8(std::uint8_t v) { data[offset++] = v; }
    void u16(std::uint16_t v) {
        data[offset++] = static_cast<std::uint8_t>(v & 0xFF);
        data[offset++] = static_cast<std::uint8_t>(v >> 8);
    }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) data[offset++] = static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF);
    }
    void i16(std::int16_t v) { u16(static_cast<std::uint16_t>(v)); }
};

struct Reader {
    const std::uint8_t* data;
    std::size_t offset = 0;

    std::uint8_t u8() { return data[offset++]; }
    std::uint16_t u16() {
        const std::uint16_t v = static_cast<std::uint16_t>(data[offset]) |
                                static_cast<std::uint16_t>(data[offset + 1]) << 8;
        offset += 2;
        return v;
    }
    std::uint32_t u32() {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(data[offset + i]) << (8 * i);
        offset += 4;
        return v;
    }
    std::int16_t i16() { return static_cast<std::int16_t>(u16()); }
};

std::int16_t quantize(double value, double scale, bool& saturated) {
    const double q = std::nearbyint(value * scale);
    if (q > 32767.0) {
        saturated = true;
        return 32767;
    }
    if (q < -32768.0) {
        saturated = true;
        return -32768;
    }
    return static_cast<std::int16_t>(q);
}

std::uint16_t quantize_u16(double value, double scale, bool& saturated) {
    const double q = std::nearbyint(value * scale);
    if (q > 65535.0) {
        saturated = true;
        return 65535;
    }
    if (q < 0.0) {
        saturated = true;
        return 0;
    }
    return static_cast<std::uint16_t>(q);
}

std::uint8_t quantize_confidence(double c) {
    return static_cast<std::uint8_t>(std::nearbyint(std::clamp(c, 0.0, 1.0) * 255.0));
}

}  // namespace

const char* to_string(DecodeFailure failure) {
    switch (failure) {
        case DecodeFailure::None: return "none";
        case DecodeFailure::BadLength: return "bad-length";
        case DecodeFailure::BadMagic: return "bad-magic";
        case DecodeFailure::BadVersion: return "bad-version";
        case DecodeFailure::BadCrc: return "bad-crc";
        case DecodeFailure::BadField: return "bad-field";
    }
    return "unknown";
}

std::uint32_t crc32(std::span<const std::uint8_t> data) {
    static constexpr auto table = [] {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t i = 0; i < 256; ++i) {
            std::uint32_t c = i;
            for (int k = 0; k < 8; ++k) c = (c & 1u) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    std::uint32_t crc = 0xFFFFFFFFu;
    for (std::uint8_t b : data) crc = table[(crc ^ b) & 0xFFu] ^ (crc >> 8);
    return crc ^ 0xFFFFFFFFu;
}

Packet encode_packet(const Event& event) {
    Packet packet;
    bool saturated = event.saturated;

    // obstacle list may still exceed the layout capacity if the event was
    // built by hand; keep the highest-confidence entries
    std::vector<PayloadObstacle> obstacles(event.obstacles);
    bool truncated = event.truncated;
    if (obstacles.size() > static_cast<std::size_t>(kMaxPayloadObstacles)) {
        std::stable_sort(obstacles.begin(), obstacles.end(),
                         [](const PayloadObstacle& a, const PayloadObstacle& b) {
                             return a.confidence > b.confidence;
                         });
        obstacles.resize(kMaxPayloadObstacles);
        truncated = true;
    }

    Cursor c{packet.raw.data()};
    c.u16(kPacketMagic);
    c.u8(kProtocolVersion);
    c.u8(static_cast<std::uint8_t>(event.sender));
    c.u8(static_cast<std::uint8_t>(event.kind));
    const std::size_t flags_offset = c.offset;
    c.u8(0);  // flags, patched below
    const double ts_ms = std::nearbyint(std::max(event.timestamp, 0.0) * 1000.0);
    c.u32(ts_ms > 4294967295.0 ? 4294967295u : static_cast<std::uint32_t>(ts_ms));
    c.i16(quantize(event.pose.position.x, 100.0, saturated));
    c.i16(quantize(event.pose.position.y, 100.0, saturated));
    c.i16(quantize(wrap_angle(event.pose.heading), 1000.0, saturated));
    c.i16(quantize(event.ball_position.x, 100.0, saturated));
    c.i16(quantize(event.ball_position.y, 100.0, saturated));
    c.i16(quantize(event.ball_velocity.x, 100.0, saturated));
    c.i16(quantize(event.ball_velocity.y, 100.0, saturated));
    c.u8(quantize_confidence(event.ball_confidence));
    c.u8(static_cast<std::uint8_t>(obstacles.size()));
    for (const PayloadObstacle& o : obstacles) {
        c.i16(quantize(o.position.x, 100.0, saturated));
        c.i16(quantize(o.position.y, 100.0, saturated));
        c.i16(quantize(wrap_angle(o.axis_theta), 1000.0, saturated));
        c.u16(quantize_u16(o.interest_length, 100.0, saturated));
        c.u8(quantize_confidence(o.confidence));
        c.u8(static_cast<std::uint8_t>(o.id & 0xFF));
    }

    packet.raw[flags_offset] =
        static_cast<std::uint8_t>((truncated ? 0x01 : 0x00) | (saturated ? 0x02 : 0x00));

    const std::uint32_t crc = crc32(std::span(packet.raw.data(), kCrcOffset));
    Cursor tail{packet.raw.data(), kCrcOffset};
    tail.u32(crc);
    return packet;
}

std::optional<Event> decode_packet(std::span<const std::uint8_t> raw, DecodeFailure* failure) {
    auto fail = [&](DecodeFailure f) {
        if (failure) *failure = f;
        return std::nullopt;
    };
    if (failure) *failure = DecodeFailure::None;

    if (raw.size() != kPacketSize) return fail(DecodeFailure::BadLength);

    Reader r{raw.data()};
    if (r.u16() != kPacketMagic) return fail(DecodeFailure::BadMagic);
    if (r.u8() != kProtocolVersion) return fail(DecodeFailure::BadVersion);

    const std::uint32_t stored_crc =
        static_cast<std::uint32_t>(raw[124]) | static_cast<std::uint32_t>(raw[125]) << 8 |
        static_cast<std::uint32_t>(raw[126]) << 16 | static_cast<std::uint32_t>(raw[127]) << 24;
    if (crc32(raw.subspan(0, kCrcOffset)) != stored_crc) return fail(DecodeFailure::BadCrc);

    Event event;
    event.sender = r.u8();
    const std::uint8_t kind = r.u8();
    if (kind >= kEventKindCount) return fail(DecodeFailure::BadField);
    event.kind = static_cast<EventKind>(kind);
    const std::uint8_t flags = r.u8();
    event.truncated = (flags & 0x01) != 0;
    event.saturated = (flags & 0x02) != 0;
    event.timestamp = r.u32() / 1000.0;
    event.pose.position = {r.i16() / 100.0, r.i16() / 100.0};
    event.pose.heading = r.i16() / 1000.0;
    event.pose.confidence = 1.0;  // pose confidence is not carried on the wire
    event.ball_position = {r.i16() / 100.0, r.i16() / 100.0};
    event.ball_velocity = {r.i16() / 100.0, r.i16() / 100.0};
    event.ball_confidence = r.u8() / 255.0;
    const std::uint8_t count = r.u8();
    if (count > kMaxPayloadObstacles) return fail(DecodeFailure::BadField);
    if (kHeaderSize + count * kObstacleRecordSize > kCrcOffset) return fail(DecodeFailure::BadField);
    event.obstacles.reserve(count);
    for (int k = 0; k < count; ++k) {
        PayloadObstacle o;
        o.position = {r.i16() / 100.0, r.i16() / 100.0};
        o.axis_theta = r.i16() / 1000.0;
        o.interest_length = r.u16() / 100.0;
        o.confidence = r.u8() / 255.0;
        o.id = r.u8();
        event.obstacles.push_back(o);
    }
    return event;
}

}  // namespace coord
