#pragma once

// JSON forms of channels, reports and sweep specs for the command-line tool.
// Complex numbers are [re, im] pairs; matrices are row-major nested arrays.

#include <string>

#include <json.hpp>

#include "qchan/degradability.hpp"
#include "qchan/sweep.hpp"
#include "qchan/symext.hpp"

namespace qchan::io {

using nlohmann::json;

// Malformed documents throw Error(InvalidParameter); structurally valid
// objects that fail channel validation throw whatever the constructors throw.
ChannelInput parse_channel(const json& doc);
sweep::SweepSpec parse_sweep(const json& doc);

json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

json verdict_to_json(const Verdict& v);
json report_to_json(const ClassificationReport& r);
// Header line and one value line, LF terminated.
std::string report_to_csv(const ClassificationReport& r);

// Representations in ChannelSpec form, so they can be fed back in.
json choi_to_json(const ChoiMatrix& c);
json kraus_to_json(const KrausSet& k);
json bloch_to_json(const PauliTransfer& p);

json oracle_to_json(const symext::OracleResult& r, const Verdict& analytic);

// 0 ok, 1 input error, 2 not a channel, 3 numerical failure.
int exit_code(ErrorKind kind);

}  // namespace qchan::io
