#ifndef UGV_UGV_HPP_
#define UGV_UGV_HPP_

#include "ugv/channel.hpp"
#include "ugv/command.hpp"
#include "ugv/dtmf.hpp"
#include "ugv/relay.hpp"
#include "ugv/runner.hpp"
#include "ugv/scenario.hpp"
#include "ugv/station.hpp"
#include "ugv/vehicle.hpp"
#include "ugv/wav.hpp"
#include "ugv/wire.hpp"

#endif
