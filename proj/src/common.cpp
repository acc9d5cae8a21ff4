// SPDX-License-Identifier: Apache-2.0
#include <tmap/common.hpp>

#include <algorithm>

namespace tmap
{
std::string to_string_u128(u128 v)
{
    if (v == 0)
        return "0";
    std::string s;
    while (v)
    {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

u128 parse_u128(const std::string& s)
{
    if (s.empty() || s.size() > 39)
        throw SchemaError("malformed integer '" + s + "'");
    u128 v = 0;
    for (char c : s)
    {
        if (c < '0' || c > '9')
            throw SchemaError("malformed integer '" + s + "'");
        v = v * 10 + static_cast<unsigned>(c - '0');
    }
    return v;
}
}  // namespace tmap
