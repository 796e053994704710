#pragma once

#include "qchan/channel.hpp"
#include "qchan/common.hpp"
#include "qchan/contractivity.hpp"
#include "qchan/distance.hpp"
#include "qchan/dynamics.hpp"
#include "qchan/enterg.hpp"
#include "qchan/qstate.hpp"
#include "qchan/random.hpp"
#include "qchan/serialize.hpp"
#include "qchan/toric.hpp"
