#pragma once

// Thermal-sensor-array ADL monitoring: synthetic 16x12 frames, edge-to-server
// transport with store-and-forward recovery, per-ROI temporal tracking,
// activity classification, and behavior analytics.

#include "tadl/analytics.hpp"
#include "tadl/channel.hpp"
#include "tadl/classification.hpp"
#include "tadl/core.hpp"
#include "tadl/imaging.hpp"
#include "tadl/journal.hpp"
#include "tadl/node.hpp"
#include "tadl/scenario.hpp"
#include "tadl/server.hpp"
#include "tadl/simulator.hpp"
#include "tadl/time.hpp"
#include "tadl/tracking.hpp"
#include "tadl/wire.hpp"
