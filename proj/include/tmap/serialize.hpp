// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <tmap/attacks.hpp>
#include <tmap/protocol.hpp>

#include <string>

namespace tmap
{
/// Version tag written into every document.
inline constexpr int schema_version = 1;

// Text in, text out. Loaders throw SchemaError naming the offending path.
std::string dump_public_params(const PublicParams& pp);
PublicParams load_public_params(const std::string& text);

std::string dump_trapdoor(const Trapdoor& td);
Trapdoor load_trapdoor(const std::string& text);

std::string dump_encoding(const AlgebraElement& gamma, uint32_t ell);
AlgebraElement load_encoding(const std::string& text, uint32_t ell);

std::string dump_attack_report(const AttackReport& rep);
std::string dump_scan_report(const ScanReport& rep, size_t tuples);
std::string dump_harvest_stats(const HarvestStats& st);

/// Round-trip helpers for individual values (used by the tests).
std::string dump_descent_point(const ExtensionField& K, const DescentPoint& P);
DescentPoint load_descent_point(const ExtensionField& K, const std::string& text);
std::string dump_tuple(const ExtensionField& K, const DescentTuple& t);
DescentTuple load_tuple(const ExtensionField& K, const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);
}  // namespace tmap
