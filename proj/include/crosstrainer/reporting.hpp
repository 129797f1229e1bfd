#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "crosstrainer/benchmark.hpp"
#include "crosstrainer/search.hpp"

namespace crosstrainer {

using json = nlohmann::ordered_json;

json to_json(const ProbeRecord& p);
json to_json(const SearchReport& r);
json to_json(const TimingBreakdown& t);
json to_json(const BenchmarkReport& r);

// Timing is the only non-reproducible report content: keys ending in
// "_seconds" or starting with "speedup" are dropped, recursively.
json without_timing(const json& j);

// Writes via a temp file + rename so failures leave no partial output.
void write_json(const json& j, const std::string& path);

void print_probe_lines(std::ostream& os, const SearchReport& r);
void print_benchmark_table(std::ostream& os, const BenchmarkReport& r);

}  // namespace crosstrainer
