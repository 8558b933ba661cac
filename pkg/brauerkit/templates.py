"""
brauerkit/templates.py

This module provides template literals for:

- golden table reports
"""

# golden table pdf template
report_template = """
<!DOCTYPE html>
<html lang="en">
<head>
    <meta charset="UTF-8">
    <title>brauerkit golden cases</title>
    <style>
        body {{
            font-family: Arial, sans-serif;
            margin: 5px;
        }}
        .header {{
            text-align: center;
            margin-bottom: 40px;
        }}
        .table {{
            margin: 10px;
        }}
        .summary {{
            margin-bottom: 30px;
            margin-top: 10px;
        }}
        .timings {{
            margin: 20px 5px;
        }}
    </style>
</head>
<body>
    <div class="header">
        <h1>Formal Brauer group golden cases</h1>
        <p>{app_name} {version}</p>
    </div>
    <div class="summary">
        <h3>Summary</h3>
        <p>{passed} passed, {failed} failed, {skipped} skipped by order.</p>
    </div>
    <div class="table">
        <h4>Cases</h4>
        <pre>{table_str}</pre>
    </div>
    <div class="timings">
        <h4>Timings (seconds)</h4>
        <pre>{timings_str}</pre>
    </div>
</body>
</html>
"""
