#pragma once

#include <iosfwd>
#include <string>

#include "pendsim/sim.hpp"

namespace pendsim::io {

/// Writes a simulation log as CSV. Full-model header:
///   t,q1..q5,dq1..dq5,Fx,Fy,tau_z[,qm1..qm5,dqm1..dqm5][,Fwx,Fwy]
/// Planar header: t,q1,q2,dq1,dq2,u[,qm1,qm2,dqm1,dqm2]
/// Values are printed with 17 significant digits so they re-parse exactly.
void write_csv(std::ostream& out, const sim::SimLog& log);
void write_csv_file(const std::string& path, const sim::SimLog& log);

/// Reads a log written by write_csv (column layout inferred from the header).
sim::SimLog read_csv(std::istream& in);
sim::SimLog read_csv_file(const std::string& path);

}  // namespace pendsim::io
