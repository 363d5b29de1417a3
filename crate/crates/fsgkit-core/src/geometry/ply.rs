//! Binary little-endian PLY with `float x y z nx ny nz` per vertex.

use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use nalgebra::Vector3;

use super::{FrameTag, GeometryError, SurfaceCloud, SurfacePoint};

pub fn write_cloud(path: &Path, cloud: &SurfaceCloud) -> Result<(), GeometryError> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    write!(
        f,
        "ply\nformat binary_little_endian 1.0\nelement vertex {}\n\
         property float x\nproperty float y\nproperty float z\n\
         property float nx\nproperty float ny\nproperty float nz\n\
         end_header\n",
        cloud.len()
    )?;
    for p in cloud.points() {
        for v in [
            p.position.x,
            p.position.y,
            p.position.z,
            p.normal.x,
            p.normal.y,
            p.normal.z,
        ] {
            f.write_all(&(v as f32).to_le_bytes())?;
        }
    }
    Ok(())
}

pub fn read_cloud(path: &Path, frame: FrameTag) -> Result<SurfaceCloud, GeometryError> {
    let file = std::fs::File::open(path)?;
    let mut reader = BufReader::new(file);
    let perr = |msg: &str| GeometryError::Parse {
        path: path.display().to_string(),
        msg: msg.to_string(),
    };
    let mut count = None;
    loop {
        let mut line = String::new();
        if reader.read_line(&mut line)? == 0 {
            return Err(perr("unexpected end of header"));
        }
        let line = line.trim_end();
        if let Some(rest) = line.strip_prefix("element vertex ") {
            count = rest.parse::<usize>().ok();
        }
        if line == "end_header" {
            break;
        }
    }
    let count = count.ok_or_else(|| perr("missing vertex element"))?;
    let mut points = Vec::with_capacity(count);
    let mut buf = [0u8; 24];
    for _ in 0..count {
        reader.read_exact(&mut buf)?;
        let g = |k: usize| f32::from_le_bytes(buf[4 * k..4 * k + 4].try_into().unwrap()) as f64;
        points.push(SurfacePoint::new(
            Vector3::new(g(0), g(1), g(2)),
            Vector3::new(g(3), g(4), g(5)),
        ));
    }
    Ok(SurfaceCloud::new(points, frame))
}
