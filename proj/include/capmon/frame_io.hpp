#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

#include "capmon/converter.hpp"

namespace capmon {

// Waveform CSV: '#'-prefixed key=value metadata lines, then the header
// t_s,i_l_a,v_out_v,v_c_v,v_mos_v and one row per sample. Values are written
// with enough digits to round-trip bit-exactly.

void write_frame(const AcquisitionFrame& frame, std::ostream& out,
                 const std::map<std::string, double>& extra_metadata = {});
void write_frame(const AcquisitionFrame& frame, const std::filesystem::path& path,
                 const std::map<std::string, double>& extra_metadata = {});

// Throws Error(Parse) with the offending line number for malformed input.
// Tolerates surrounding whitespace, CR/LF endings and blank lines.
AcquisitionFrame read_frame(std::istream& in);
AcquisitionFrame read_frame(const std::filesystem::path& path);

}  // namespace capmon
