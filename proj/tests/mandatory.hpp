#pragma once

#include <array>
#include <string_view>

namespace testing {

// Catalog entries that must always ship.
inline constexpr std::array<std::string_view, 45> kMandatoryEntries{
    "4^2_10^5",
    "4^3_10^4",
    "4^4_10^3",
    "4^5_10^2",
    "4^2_10^4_1^1",
    "8^2_2^8",
    "8^3_2^7",
    "8^4_2^6",
    "8^5_2^5",
    "8^6_2^4",
    "8^7_2^3",
    "8^2_2^11",
    "8^3_2^6_5^1",
    "8^5_2^4_5^1",
    "8^7_2^2_5^1",
    "8^5_14^1_20^1",
    "20^4_8^2_2^1",
    "20^4_8^2_5^1",
    "20^5_8^1_5^1",
    "14^6_8^1",
    "14^6_11^1",
    "14^6_17^1",
    "14^6_20^1",
    "14^6_23^1",
    "14^6_26^1",
    "14^6_29^1",
    "14^6_32^1",
    "14^9_11^1",
    "14^9_17^1",
    "14^9_20^1",
    "14^9_23^1",
    "14^9_26^1",
    "14^9_29^1",
    "14^9_32^1",
    "14^9_38^1",
    "14^9_41^1",
    "14^9_44^1",
    "14^9_47^1",
    "14^9_50^1",
    "14^9_53^1",
    "20^9_11^1",
    "20^9_17^1",
    "20^9_23^1",
    "38^9_11^1",
    "38^9_14^1"};

}  // namespace testing
