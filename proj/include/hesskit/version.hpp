#pragma once

#define HESSKIT_VERSION "0.1.0"
