#pragma once

// Published defining rows of good matrices of orders 27 and 57.

#include <array>
#include <string_view>

namespace goodmat::testdata {

inline constexpr std::array<std::string_view, 4> kOrder27 = {
    "+++++++--+++-+-+---++------",
    "+-++-+---+--++++--+---+-++-",
    "+-+++---+--+----+--+---+++-",
    "+----++-+---+--+---+-++----",
};

inline constexpr std::array<std::string_view, 4> kOrder57 = {
    "+-+---++--+--+-+-+++-------++--+++++++---+-+-++-++--+++-+",
    "+++-+--++---+---+--+-+-++++----++++-+-+--+---+---++--+-++",
    "++++---+--+--+--+-+-+----+++--+++----+-+-+--+--+--+---+++",
    "+++-++++++--+-+++-+-++----++--++----++-+-+++-+--++++++-++",
};

}  // namespace goodmat::testdata
