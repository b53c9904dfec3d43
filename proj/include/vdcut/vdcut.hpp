#pragma once

#include "vdcut/ansatz.hpp"
#include "vdcut/circuit.hpp"
#include "vdcut/circuit_io.hpp"
#include "vdcut/coupling_map.hpp"
#include "vdcut/crosstalk.hpp"
#include "vdcut/cutting.hpp"
#include "vdcut/dag.hpp"
#include "vdcut/decompose.hpp"
#include "vdcut/density_matrix.hpp"
#include "vdcut/distribution.hpp"
#include "vdcut/execution.hpp"
#include "vdcut/experiment.hpp"
#include "vdcut/maxcut.hpp"
#include "vdcut/noise_model.hpp"
#include "vdcut/observable.hpp"
#include "vdcut/optimizer.hpp"
#include "vdcut/overhead.hpp"
#include "vdcut/pairwise.hpp"
#include "vdcut/parallel.hpp"
#include "vdcut/report.hpp"
#include "vdcut/routing.hpp"
#include "vdcut/simulator.hpp"
#include "vdcut/statevector.hpp"
#include "vdcut/vdistill.hpp"
#include "vdcut/zne.hpp"
