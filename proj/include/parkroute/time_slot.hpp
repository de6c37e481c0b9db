#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace parkroute {

/// Four-hour zones of the day in clock order starting at midnight.
enum class TimeSlot : std::size_t {
  Night = 0,       // 12-4am
  EarlyMorning,    // 4-8am
  Morning,         // 8am-12pm
  Afternoon,       // 12-4pm
  Evening,         // 4-8pm
  LateEvening,     // 8pm-12am
};

inline constexpr std::size_t kSlotCount = 6;

inline constexpr std::array<TimeSlot, kSlotCount> kAllSlots = {
    TimeSlot::Night,     TimeSlot::EarlyMorning, TimeSlot::Morning,
    TimeSlot::Afternoon, TimeSlot::Evening,      TimeSlot::LateEvening};

// Spelling is part of the file formats; do not change.
inline constexpr std::array<std::string_view, kSlotCount> kSlotNames = {
    "12-4am", "4-8am", "8am-12pm", "12-4pm", "4-8pm", "8pm-12am"};

constexpr std::size_t slot_index(TimeSlot slot) noexcept {
  return static_cast<std::size_t>(slot);
}

constexpr std::string_view slot_name(TimeSlot slot) noexcept {
  return kSlotNames[slot_index(slot)];
}

inline std::optional<TimeSlot> parse_slot(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kSlotCount; ++i) {
    if (kSlotNames[i] == name) return kAllSlots[i];
  }
  return std::nullopt;
}

/// Per-slot table of values, indexed by TimeSlot.
template <typename T>
struct SlotTable {
  std::array<T, kSlotCount> values{};

  constexpr T& operator[](TimeSlot slot) noexcept { return values[slot_index(slot)]; }
  constexpr const T& operator[](TimeSlot slot) const noexcept {
    return values[slot_index(slot)];
  }

  friend bool operator==(const SlotTable&, const SlotTable&) = default;
};

}  // namespace parkroute
